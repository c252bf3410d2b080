#pragma once

#include "mixlab/grid.hpp"
#include "mixlab/rotation.hpp"
#include "mixlab/slide.hpp"

#include <string>

namespace mixlab {

/// Text formats, one record per line:
///   mixlab-set v1 / N <n> / n rows of '0'/'1', row j = 0 first
///   mixlab-slide v1 / N <2n> / 2n rows of '0'/'1'
///   mixlab-moves v1 / N <n> / one "R ci cj s q" line per move
/// Blank lines and lines starting with '#' are ignored.

std::string format_field(const IndicatorField& field);
IndicatorField parse_field(const std::string& text);

std::string format_slide(const SlideState& state);
SlideState parse_slide(const std::string& text);

std::string format_moves(const MoveSequence& seq);
MoveSequence parse_moves(const std::string& text);

/// Whole-file helpers; throw std::runtime_error on I/O failure.
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

IndicatorField read_field(const std::string& path);
void write_field(const std::string& path, const IndicatorField& field);
MoveSequence read_moves(const std::string& path);
void write_moves(const std::string& path, const MoveSequence& seq);

}  // namespace mixlab
