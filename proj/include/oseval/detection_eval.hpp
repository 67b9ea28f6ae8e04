#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "oseval/curve.hpp"
#include "oseval/matching.hpp"

namespace oseval {

/// FROC: TPDR (C+ at or above the threshold over `num_faces`) against FPDPI
/// (C- at or above the threshold over `num_images`). `num_faces` counts every
/// non-ignored ground-truth face, known or unknown. Throws
/// std::invalid_argument when either denominator is zero.
Curve froc(std::span<const ClassifiedDetection> classified, std::size_t num_images,
           std::size_t num_faces);

/// Smallest candidate threshold whose FPDPI stays within `target`.
std::optional<double> fpdpi_inverse(const Curve& froc_curve, double target);

/// Sum of TPDR over the FPDPI budgets; unreachable budgets add 0.
RankingRow sum_tpdr(const Curve& froc_curve, const std::vector<double>& targets = kDefaultTargets,
                    std::string method = {});

/// FROC operating point reached by a fixed threshold that need not be one of
/// the candidates of this data.
CurvePoint froc_at(std::span<const ClassifiedDetection> classified, std::size_t num_images,
                   std::size_t num_faces, double threshold);

}  // namespace oseval
