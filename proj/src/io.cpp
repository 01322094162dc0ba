#include "lalign/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace lalign {

namespace {

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(strip(field));
    return fields;
}

double parse_double(const std::string& s, const std::string& path, int lineno) {
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v))
        throw ParseError(path + ":" + std::to_string(lineno) + ": bad value '" + s + "'");
    return v;
}

std::vector<std::vector<double>> read_table(const std::string& path,
                                            const std::vector<std::string>& header) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    std::vector<std::string> head = split_csv(line);
    if (head != header) {
        std::string want;
        for (size_t i = 0; i < header.size(); ++i) want += (i ? "," : "") + header[i];
        throw ParseError(path + ": expected header '" + want + "'");
    }
    std::vector<std::vector<double>> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (strip(line).empty()) continue;
        std::vector<std::string> fields = split_csv(line);
        if (fields.size() != header.size())
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected " +
                             std::to_string(header.size()) + " fields");
        std::vector<double> row;
        for (const std::string& f : fields) row.push_back(parse_double(f, path, lineno));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(path + ": no data rows");
    return rows;
}

}  // namespace

std::vector<FourVector> read_four_vectors(const std::string& path) {
    auto rows = read_table(path, {"t", "x", "y", "z"});
    std::vector<FourVector> vs;
    vs.reserve(rows.size());
    for (const auto& r : rows) vs.push_back(FourVector{r[0], r[1], r[2], r[3]});
    return vs;
}

std::vector<std::array<double, 3>> read_three_vectors(const std::string& path) {
    auto rows = read_table(path, {"x", "y", "z"});
    std::vector<std::array<double, 3>> vs;
    vs.reserve(rows.size());
    for (const auto& r : rows) vs.push_back({r[0], r[1], r[2]});
    return vs;
}

void write_four_vectors(const std::string& path, const std::vector<FourVector>& vs) {
    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot open for writing");
    out << "t,x,y,z\n";
    char buf[340];
    for (const FourVector& v : vs) {
        int len = std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", v.t, v.x, v.y, v.z);
        out.write(buf, len);
    }
}

Mat four_vectors_to_columns(const std::vector<FourVector>& vs) {
    if (vs.empty()) throw InvalidInput("four_vectors_to_columns: no vectors");
    Mat m(4, static_cast<int>(vs.size()));
    for (int j = 0; j < m.cols(); ++j) {
        const FourVector& v = vs[static_cast<size_t>(j)];
        m(0, j) = v.t;
        m(1, j) = v.x;
        m(2, j) = v.y;
        m(3, j) = v.z;
    }
    return m;
}

Mat three_vectors_to_columns(const std::vector<std::array<double, 3>>& vs) {
    if (vs.empty()) throw InvalidInput("three_vectors_to_columns: no vectors");
    Mat m(3, static_cast<int>(vs.size()));
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < 3; ++i) m(i, j) = vs[static_cast<size_t>(j)][static_cast<size_t>(i)];
    return m;
}

}  // namespace lalign
