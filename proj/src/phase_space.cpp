#include "moyal/phase_space.hpp"

#include "moyal/error.hpp"

namespace moyal {

template <typename T>
void BasicPhaseSpaceFunction<T>::check_shape() const {
  require(values_.size() == grid_.n() * grid_.n(), ErrorCode::invalid_argument,
          "phase-space samples must be n*n");
  require(grid_.hbar() == config_.hbar, ErrorCode::grid_mismatch,
          "grid and physics config disagree on hbar");
}

template class BasicPhaseSpaceFunction<double>;
template class BasicPhaseSpaceFunction<cplx>;

ComplexPhaseSpaceFunction to_complex(const PhaseSpaceFunction& f) {
  std::vector<cplx> v(f.values().begin(), f.values().end());
  return {f.grid(), f.config(), std::move(v)};
}

}  // namespace moyal
