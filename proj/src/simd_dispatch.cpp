#include "swgp/simd.hpp"

#include <cstdlib>
#include <cstring>

namespace swgp::simd {

namespace {

Ops make_scalar() {
  return Ops{scalar::dot, scalar::dot3, scalar::axpy, scalar::sum,
             scalar::se_row, "scalar"};
}

Ops make_avx2() {
  return Ops{avx2::dot, avx2::dot3, avx2::axpy, avx2::sum, avx2::se_row,
             "avx2"};
}

Ops select() {
  if (const char* env = std::getenv("SWGP_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return make_scalar();
    if (std::strcmp(env, "avx2") == 0 && avx2::available()) return make_avx2();
  }
  return avx2::available() ? make_avx2() : make_scalar();
}

}  // namespace

const Ops& active() {
  static const Ops ops = select();
  return ops;
}

}  // namespace swgp::simd
