#include "lpapprox/cubes.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace lpapprox {

Cube::Cube(std::vector<double> lo_, std::vector<double> hi_, std::vector<bool> faces)
    : lo(std::move(lo_)), hi(std::move(hi_)), faces_belong(std::move(faces)) {
    if (lo.empty() || lo.size() != hi.size())
        throw ValidationError("cube: lo and hi must be nonempty and equal-length");
    if (faces_belong.size() != 2 * lo.size())
        throw ValidationError("cube: needs 2d face membership flags");
    for (std::size_t j = 0; j < lo.size(); ++j) {
        if (!std::isfinite(lo[j]) || !std::isfinite(hi[j]))
            throw NumericError("cube: non-finite corner");
        if (!(lo[j] < hi[j]))
            throw ValidationError("cube: requires lo < hi on every axis");
    }
}

Cube Cube::half_open(std::vector<double> lo_, std::vector<double> hi_) {
    const std::size_t d = lo_.size();
    std::vector<bool> faces(2 * d, false);
    for (std::size_t j = 0; j < d; ++j) faces[j] = true;
    return Cube(std::move(lo_), std::move(hi_), std::move(faces));
}

bool Cube::contains(std::span<const double> x) const {
    const int d = dim();
    for (int j = 0; j < d; ++j) {
        const bool lower_ok = faces_belong[static_cast<std::size_t>(j)]
                                  ? x[static_cast<std::size_t>(j)] >= lo[static_cast<std::size_t>(j)]
                                  : x[static_cast<std::size_t>(j)] > lo[static_cast<std::size_t>(j)];
        const bool upper_ok = faces_belong[static_cast<std::size_t>(d) + static_cast<std::size_t>(j)]
                                  ? x[static_cast<std::size_t>(j)] <= hi[static_cast<std::size_t>(j)]
                                  : x[static_cast<std::size_t>(j)] < hi[static_cast<std::size_t>(j)];
        if (!lower_ok || !upper_ok) return false;
    }
    return true;
}

double Cube::volume() const {
    double v = 1.0;
    for (int j = 0; j < dim(); ++j) v *= hi[static_cast<std::size_t>(j)] - lo[static_cast<std::size_t>(j)];
    return v;
}

std::vector<double> Cube::corner(unsigned mask) const {
    std::vector<double> x(lo.size());
    for (std::size_t j = 0; j < lo.size(); ++j) x[j] = (mask >> j) & 1u ? hi[j] : lo[j];
    return x;
}

std::vector<double> Cube::face_midpoint(int face) const {
    std::vector<double> x(lo.size());
    for (std::size_t j = 0; j < lo.size(); ++j) x[j] = 0.5 * (lo[j] + hi[j]);
    const std::size_t axis = static_cast<std::size_t>(face) % lo.size();
    x[axis] = face < dim() ? lo[axis] : hi[axis];
    return x;
}

bool cubes_overlap(const Cube& a, const Cube& b) {
    const int d = a.dim();
    if (d != b.dim()) throw ValidationError("cubes_overlap: dimension mismatch");
    for (int j = 0; j < d; ++j) {
        const std::size_t js = static_cast<std::size_t>(j);
        const double l = std::max(a.lo[js], b.lo[js]);
        const double u = std::min(a.hi[js], b.hi[js]);
        if (l > u) return false;
        if (l == u) {
            // Single candidate point on this axis; it must be admitted by
            // both cubes' face rules.
            auto admits = [&](const Cube& c, double t) {
                const bool lower_ok = c.faces_belong[js] ? t >= c.lo[js] : t > c.lo[js];
                const bool upper_ok = c.faces_belong[js + static_cast<std::size_t>(d)]
                                          ? t <= c.hi[js]
                                          : t < c.hi[js];
                return lower_ok && upper_ok;
            };
            if (!admits(a, l) || !admits(b, l)) return false;
        }
    }
    return true;
}

PiecewiseConstantFn::PiecewiseConstantFn(std::vector<Cube> cubes_, std::vector<double> values_)
    : cubes(std::move(cubes_)), values(std::move(values_)) {
    if (cubes.size() != values.size())
        throw ValidationError("piecewise fn: cube/value count mismatch");
    for (const Cube& c : cubes)
        if (c.dim() != dim()) throw ValidationError("piecewise fn: mixed dimensions");
    for (double v : values)
        if (!std::isfinite(v)) throw NumericError("piecewise fn: non-finite value");
}

double PiecewiseConstantFn::operator()(std::span<const double> x) const {
    if (!cubes.empty() && static_cast<int>(x.size()) != dim())
        throw ValidationError("piecewise fn: input dimension mismatch");
    for (std::size_t i = 0; i < cubes.size(); ++i)
        if (cubes[i].contains(x)) return values[i];
    return 0.0;
}

std::optional<std::pair<std::size_t, std::size_t>> PiecewiseConstantFn::find_overlap() const {
    for (std::size_t i = 0; i < cubes.size(); ++i)
        for (std::size_t k = i + 1; k < cubes.size(); ++k)
            if (cubes_overlap(cubes[i], cubes[k])) return std::make_pair(i, k);
    return std::nullopt;
}

void PiecewiseConstantFn::require_disjoint() const {
    if (auto pair = find_overlap())
        throw ValidationError("piecewise fn: cubes " + std::to_string(pair->first) + " and " +
                              std::to_string(pair->second) + " overlap");
}

namespace {
void append_double(std::string& out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}
} // namespace

std::string to_json(const PiecewiseConstantFn& fn) {
    std::string out = "{\"d\":" + std::to_string(fn.dim()) + ",\"cubes\":[";
    for (std::size_t i = 0; i < fn.cubes.size(); ++i) {
        if (i) out += ',';
        const Cube& c = fn.cubes[i];
        out += "{\"lo\":[";
        for (std::size_t j = 0; j < c.lo.size(); ++j) {
            if (j) out += ',';
            append_double(out, c.lo[j]);
        }
        out += "],\"hi\":[";
        for (std::size_t j = 0; j < c.hi.size(); ++j) {
            if (j) out += ',';
            append_double(out, c.hi[j]);
        }
        out += "],\"faces_belong\":[";
        for (std::size_t j = 0; j < c.faces_belong.size(); ++j) {
            if (j) out += ',';
            out += c.faces_belong[j] ? "true" : "false";
        }
        out += "]}";
    }
    out += "],\"values\":[";
    for (std::size_t i = 0; i < fn.values.size(); ++i) {
        if (i) out += ',';
        append_double(out, fn.values[i]);
    }
    out += "]}";
    return out;
}

PiecewiseConstantFn piecewise_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("piecewise json: " + std::string(e.what()));
    }
    try {
        const int d = j.at("d").get<int>();
        std::vector<Cube> cubes;
        for (const auto& cj : j.at("cubes")) {
            Cube c(cj.at("lo").get<std::vector<double>>(), cj.at("hi").get<std::vector<double>>(),
                   cj.at("faces_belong").get<std::vector<bool>>());
            if (c.dim() != d) throw ValidationError("piecewise json: cube dimension != d");
            cubes.push_back(std::move(c));
        }
        return PiecewiseConstantFn(std::move(cubes), j.at("values").get<std::vector<double>>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("piecewise json: " + std::string(e.what()));
    }
}

} // namespace lpapprox
