#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "majo/operators.hpp"
#include "majo/step_function.hpp"

namespace majo::io {

/// Contents of a `.sfn` file.
///
///     # comment
///     total 2            # or: total inf
///     3 1                # <value> <mass>, any order
///     1/2 1
///
/// An alignment block fixes the atoms the values live on. Value lines then
/// follow atom order; the mass column is optional and, when present, must
/// match the atom. Missing trailing atoms are zero.
///
///     total inf
///     partition 1 1 1
///     tail 1 x inf       # <mass> x <count|inf>
///     3
///     1/2
struct SfnDocument {
  StepFunction function = StepFunction::zero(ExtendedReal(0));
  std::optional<AlignedFunction> aligned;
};

/// Errors: ParseError carrying line and column, or the StepFunction and
/// Partition construction errors.
SfnDocument parse_sfn(std::string_view text);

/// A partition alone: `partition` and `tail` lines, optionally a `total`
/// line that must agree with them. Value lines are ignored.
Partition parse_partition(std::string_view text);

/// `rows cols` followed by rows*cols rational entries in row-major order.
OperatorMatrix parse_mat(std::string_view text);

std::string format_sfn(const StepFunction& f);
std::string format_sfn(const AlignedFunction& f);
std::string format_partition(const Partition& p);
std::string format_mat(const OperatorMatrix& m);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace majo::io
