#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fefbound/cli.hpp"

namespace fefbound::cli {

namespace {

using nlohmann::json;

Eigen::MatrixXd read_real_block(const json& doc, const char* field) {
    if (!doc.contains(field)) throw ParseError(std::string("state file: missing field \"") + field + "\"");
    const json& rows = doc.at(field);
    if (!rows.is_array() || rows.empty()) {
        throw ParseError(std::string("state file: field \"") + field + "\" must be a non-empty array of rows");
    }
    const std::size_t n = rows.size();
    Eigen::MatrixXd out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
        const json& row = rows[r];
        if (!row.is_array() || row.size() != n) {
            throw ParseError(std::string("state file: field \"") + field + "\" row " + std::to_string(r) +
                             " must have " + std::to_string(n) + " entries (square matrix expected)");
        }
        for (std::size_t c = 0; c < n; ++c) {
            if (!row[c].is_number()) {
                throw ParseError(std::string("state file: field \"") + field + "\" entry [" + std::to_string(r) +
                                 "][" + std::to_string(c) + "] is not a number");
            }
            const double v = row[c].get<double>();
            if (!std::isfinite(v)) {
                throw ParseError(std::string("state file: field \"") + field + "\" entry [" + std::to_string(r) +
                                 "][" + std::to_string(c) + "] is not finite");
            }
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
        }
    }
    return out;
}

int integer_sqrt(Eigen::Index n) {
    auto root = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
    while (root * root > n) --root;
    while ((root + 1) * (root + 1) <= n) ++root;
    return root * root == n ? static_cast<int>(root) : -1;
}

}  // namespace

DensityState parse_state_json(const std::string& text, bool allow_unphysical) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("state file: malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("state file: top level must be a JSON object");

    const Eigen::MatrixXd re = read_real_block(doc, "re");
    const Eigen::MatrixXd im = read_real_block(doc, "im");
    if (im.rows() != re.rows()) {
        throw ParseError("state file: field \"im\" is " + std::to_string(im.rows()) + "x" +
                         std::to_string(im.cols()) + " but \"re\" is " + std::to_string(re.rows()) + "x" +
                         std::to_string(re.cols()));
    }

    const int inferred = integer_sqrt(re.rows());
    int d = inferred;
    if (doc.contains("dim")) {
        const json& dim = doc.at("dim");
        if (!dim.is_number_integer()) throw ParseError("state file: field \"dim\" must be an integer");
        d = dim.get<int>();
        if (d < 2) throw DimensionError("state file: \"dim\" must be at least 2, got " + std::to_string(d));
        if (static_cast<Eigen::Index>(d) * d != re.rows()) {
            throw DimensionError("state file: \"dim\" is " + std::to_string(d) + " but the matrix is " +
                                 std::to_string(re.rows()) + "x" + std::to_string(re.cols()) +
                                 " (expected d^2 x d^2)");
        }
    } else if (inferred < 2) {
        throw DimensionError("state file: matrix size " + std::to_string(re.rows()) +
                             " is not d^2 for an integer d >= 2");
    }

    ComplexMatrix m(re.rows(), re.cols());
    m.real() = re;
    m.imag() = im;
    return allow_unphysical ? DensityState::unchecked(d, std::move(m)) : DensityState::physical(d, std::move(m));
}

DensityState parse_state_file(const std::string& path, bool allow_unphysical) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read state file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_state_json(buffer.str(), allow_unphysical);
}

std::string state_to_json(const DensityState& state) {
    const ComplexMatrix& m = state.matrix();
    json re = json::array();
    json im = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json re_row = json::array();
        json im_row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            re_row.push_back(m(r, c).real());
            im_row.push_back(m(r, c).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    json doc;
    doc["dim"] = state.dim();
    doc["re"] = std::move(re);
    doc["im"] = std::move(im);
    return doc.dump() + "\n";
}

void write_state_file(const std::string& path, const DensityState& state) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write state file " + path);
    out << state_to_json(state);
    if (!out) throw IoError("failed while writing state file " + path);
}

}  // namespace fefbound::cli
