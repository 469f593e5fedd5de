#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ratlyap/dynamics.hpp"
#include "ratlyap/hierarchy.hpp"
#include "ratlyap/poly.hpp"
#include "ratlyap/sosgram.hpp"
#include "ratlyap/verify.hpp"

namespace ratlyap {

// JSON forms. Schemas are documented in the README; all of them round-trip.
std::string poly_to_json(const HomogPoly& p);
HomogPoly poly_from_json(const std::string& text);

std::string vector_field_to_json(const VectorField& f);
VectorField vector_field_from_json(const std::string& text);

std::string lyapunov_to_json(const RationalLyapunov& V);
RationalLyapunov lyapunov_from_json(const std::string& text);

std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);

std::string report_to_json(const SearchReport& report);

// Sparse triplet export of an assembled Gram system.
std::string gram_system_to_json(const AffineGramSystem& system);

// Text polynomial format: a sum of `coeff * x1^a1*...*xn^an` terms, e.g.
// "2*x1^3 - 0.5*x1*x2^2". Returns the graded parts in ascending degree.
std::vector<HomogPoly> poly_parts_from_text(const std::string& text, int n);

// One line per component; the number of lines fixes the dimension.
VectorField vector_field_from_text(const std::string& text);

// Loads a vector field from a .json file or (otherwise) the text format.
VectorField load_vector_field(const std::string& path);

// CSV "t,x1,...,xn" with an optional extra named column.
std::string trajectory_to_csv(const Trajectory& traj,
                              const std::string& extra_name = "",
                              const std::vector<double>& extra = {});

// FNV-1a 64-bit content digest, hex encoded.
std::string digest_hex(const std::string& bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace ratlyap
