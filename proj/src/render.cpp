#include "vbetti/render.hpp"

#include <algorithm>
#include <sstream>

namespace vbetti::render {

namespace {

std::string pad_left(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string rstrip(std::string s) {
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
}

} // namespace

std::string page_table(const SpectralPage& page, const std::vector<std::vector<std::size_t>>* block_dims) {
    std::size_t width = 1;
    for (const auto& col : page.dims)
        for (std::size_t v : col) width = std::max(width, std::to_string(v).size());
    width += 2;

    std::ostringstream out;
    out << "E_" << page.r << "\n";
    const std::string label_q = "q=" + std::to_string(page.rows() == 0 ? 0 : page.rows() - 1);
    const std::size_t label = label_q.size();
    for (std::size_t q = page.rows(); q-- > 0;) {
        std::string line = pad_left("q=" + std::to_string(q), label) + ":";
        for (std::size_t p = 0; p < page.columns(); ++p) {
            const bool blank = block_dims && (*block_dims)[p][q] == 0;
            line += pad_left(blank ? "" : std::to_string(page.dims[p][q]), width);
        }
        out << rstrip(line) << "\n";
    }
    std::string axis(label + 1, ' ');
    for (std::size_t p = 0; p < page.columns(); ++p) axis += pad_left("p" + std::to_string(p), width);
    out << axis << "\n";
    return out.str();
}

std::string weight_triangle(const WeightArray& w) {
    const std::size_t n = w.degrees();
    if (n == 0) return "(empty)\n";
    std::size_t width = 1;
    for (std::int64_t v : w.values()) width = std::max(width, std::to_string(v).size());
    width += 1;
    std::ostringstream out;
    for (std::size_t j = n; j-- > 0;) {
        std::string line;
        for (std::size_t i = 0; i < n; ++i) line += pad_left(i >= j ? std::to_string(w.at(i, j)) : "", width);
        out << rstrip(line) << "\n";
    }
    return out.str();
}

std::string betti_line(const BettiVector& b) { return "b: " + b.to_string(); }

std::string virtual_betti_table(const IntPolynomial& beta) {
    std::ostringstream out;
    const std::size_t top = beta.degree().value_or(0);
    for (std::size_t k = 0; k <= top; ++k) out << "beta_" << k << ": " << beta.coeff(k) << "\n";
    return out.str();
}

std::string join(const std::vector<std::int64_t>& values, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? sep : "") + std::to_string(values[i]);
    return out;
}

} // namespace vbetti::render
