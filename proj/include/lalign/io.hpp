#ifndef LALIGN_IO_HPP
#define LALIGN_IO_HPP

#include <array>
#include <string>
#include <vector>

#include "lalign/lorentz.hpp"
#include "lalign/matrix.hpp"

namespace lalign {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// CSV with header "t,x,y,z", one vector per row. All values must be finite.
std::vector<FourVector> read_four_vectors(const std::string& path);

/// CSV with header "x,y,z", one vector per row.
std::vector<std::array<double, 3>> read_three_vectors(const std::string& path);

void write_four_vectors(const std::string& path, const std::vector<FourVector>& vs);

/// Files store vectors as rows; the solvers take them as columns.
Mat four_vectors_to_columns(const std::vector<FourVector>& vs);
Mat three_vectors_to_columns(const std::vector<std::array<double, 3>>& vs);

}  // namespace lalign

#endif
