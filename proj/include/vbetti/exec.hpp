#ifndef VBETTI_EXEC_HPP
#define VBETTI_EXEC_HPP

namespace vbetti {

/// Selects the OpenMP kernels or their single-threaded counterparts.
/// Both paths return identical results.
enum class Exec { serial, parallel };

} // namespace vbetti

#endif
