#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "numrad/matrix.hpp"
#include "numrad/rng.hpp"

namespace numrad {

enum class EnsembleKind { ginibre, hermitian, psd, unitary, normal, contraction, nilpotent_shift, scalar, zero };

std::string_view to_string(EnsembleKind kind) noexcept;
std::optional<EnsembleKind> parse_ensemble(std::string_view name) noexcept;

/// Kinds that only produce square matrices.
bool square_only(EnsembleKind kind) noexcept;

/// Draws one matrix of the given kind. Every draw is post-checked against the
/// kind's defining property (1e-10 relative); scalar requires 1 x 1.
/// Throws ShapeUnsupported for shapes the kind cannot produce.
ComplexMatrix sample(EnsembleKind kind, std::size_t m, std::size_t n, const RngStream& stream);

/// True iff `mat` has the kind's defining property within 1e-10 * scale.
bool satisfies_kind(EnsembleKind kind, const ComplexMatrix& mat);

}  // namespace numrad
