#include "nlroth/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace nlroth {

namespace {

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_set_file(const std::filesystem::path& path, const IntegerSet& a) {
    auto out = open_out(path);
    out << "N=" << a.length() << "\n";
    for (const std::int64_t x : a.elements()) out << x << "\n";
}

IntegerSet read_set_file(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string header;
    if (!std::getline(in, header) || header.rfind("N=", 0) != 0) {
        throw std::runtime_error("set file must start with N=<N>");
    }
    const std::int64_t n = std::stoll(header.substr(2));
    IntegerSet s(n);
    std::int64_t prev = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::int64_t x = std::stoll(line);
        if (x <= prev) throw std::runtime_error("set file elements must be ascending");
        prev = x;
        s.insert(x);
    }
    return s;
}

void write_function_file(const std::filesystem::path& path, const BoundedFunction& f) {
    auto out = open_out(path);
    out << "x,re,im\n";
    for (std::int64_t x = 1; x <= f.length(); ++x) {
        const cplx v = f(x);
        out << x << "," << format_double(v.real()) << "," << format_double(v.imag()) << "\n";
    }
}

BoundedFunction read_function_file(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line != "x,re,im") {
        throw std::runtime_error("function file must start with header x,re,im");
    }
    std::vector<cplx> vals;
    std::int64_t expected = 1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        std::getline(row, field, ',');
        if (std::stoll(field) != expected) throw std::runtime_error("function rows must cover x = 1..N in order");
        std::getline(row, field, ',');
        const double re = std::stod(field);
        std::getline(row, field, ',');
        const double im = std::stod(field);
        vals.emplace_back(re, im);
        ++expected;
    }
    if (vals.empty()) throw std::runtime_error("function file has no rows");
    double bound = 1.0;
    for (const cplx& v : vals) bound = std::max(bound, std::abs(v));
    return BoundedFunction(std::move(vals), bound);
}

void write_factor_file(const std::filesystem::path& csv_path,
                       const std::filesystem::path& meta_path, const Factor& b) {
    auto out = open_out(csv_path);
    out << "x,atom_id\n";
    for (std::int64_t x = 1; x <= b.length(); ++x) out << x << "," << b.atom_of(x) << "\n";

    nlohmann::json meta;
    meta["schema"] = 1;
    meta["N"] = b.length();
    meta["atoms"] = b.atom_count();
    if (b.local_meta()) {
        meta["d"] = b.local_meta()->dimension;
        meta["M"] = b.local_meta()->resolution;
        meta["q"] = b.local_meta()->modulus;
        meta["phases"] = b.local_meta()->phases;
    }
    auto mout = open_out(meta_path);
    mout << meta.dump(2) << "\n";
}

Factor read_factor_file(const std::filesystem::path& csv_path,
                        const std::filesystem::path& meta_path) {
    auto in = open_in(csv_path);
    std::string line;
    if (!std::getline(in, line) || line != "x,atom_id") {
        throw std::runtime_error("factor file must start with header x,atom_id");
    }
    std::vector<std::int64_t> labels;
    std::int64_t expected = 1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        std::getline(row, field, ',');
        if (std::stoll(field) != expected) throw std::runtime_error("factor rows must cover x = 1..N in order");
        std::getline(row, field, ',');
        labels.push_back(std::stoll(field));
        ++expected;
    }
    std::optional<LocalMeta> local;
    auto min = open_in(meta_path);
    const auto meta = nlohmann::json::parse(min);
    if (meta.contains("d")) {
        LocalMeta m;
        m.dimension = meta.at("d").get<std::int64_t>();
        m.resolution = meta.at("M").get<std::int64_t>();
        m.modulus = meta.at("q").get<std::int64_t>();
        m.phases = meta.at("phases").get<std::vector<std::int64_t>>();
        local = std::move(m);
    }
    return Factor::from_labels(static_cast<std::int64_t>(labels.size()), labels, std::move(local));
}

}  // namespace nlroth
