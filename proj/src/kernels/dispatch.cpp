#include <cstdlib>
#include <stdexcept>
#include <string>

#include "inrs/kernels.hpp"

namespace inrs::kernels {

#if defined(INRS_HAVE_AVX2_KERNELS)
const KernelTable* avx2_table_impl();
#endif

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable* avx2_table() {
#if defined(INRS_HAVE_AVX2_KERNELS)
  return avx2_table_impl();
#else
  return nullptr;
#endif
}

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(INRS_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::scalar};
  if (cpu_supports(Isa::avx2)) out.push_back(Isa::avx2);
  return out;
}

const KernelTable& table(Isa isa) {
  if (!cpu_supports(isa)) throw std::runtime_error(std::string("kernel set not available: ") + isa_name(isa));
  if (isa == Isa::avx2) return *avx2_table();
  return scalar_table();
}

const KernelTable& active() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* env = std::getenv("INRS_KERNELS");
    if (env != nullptr && std::string(env) == "scalar") return scalar_table();
    if (cpu_supports(Isa::avx2)) return *avx2_table();
    return scalar_table();
  }();
  return chosen;
}

}  // namespace inrs::kernels
