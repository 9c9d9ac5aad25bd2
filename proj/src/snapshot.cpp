#include "vorwave/snapshot.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "vorwave/errors.hpp"

namespace vorwave {

namespace {

constexpr const char* kMagic = "vorwave-snapshot";
constexpr int kVersion = 1;

std::string read_line(std::istream& in, const std::filesystem::path& path, const std::string& what) {
    std::string line;
    if (!std::getline(in, line)) {
        throw IoError("snapshot " + path.string() + ": unexpected end of file while reading " + what);
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return line;
}

double read_header_value(std::istream& in, const std::filesystem::path& path, const std::string& key) {
    std::string line = read_line(in, path, "header field " + key);
    std::istringstream ss(line);
    std::string name, value, extra;
    if (!(ss >> name >> value) || (ss >> extra) || name != key) {
        throw IoError("snapshot " + path.string() + ": malformed header line \"" + line +
                      "\", expected \"" + key + " <value>\"");
    }
    return parse_double(value, "snapshot field " + key);
}

void read_array(std::istream& in, const std::filesystem::path& path, const std::string& key,
                int n, std::vector<double>& out) {
    std::string marker = read_line(in, path, "section marker " + key);
    if (marker != key) {
        throw IoError("snapshot " + path.string() + ": expected section \"" + key +
                      "\", found \"" + marker + "\"");
    }
    out.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        std::string line = read_line(in, path, key + "[" + std::to_string(j) + "]");
        out[static_cast<std::size_t>(j)] = parse_double(line, key + " entry " + std::to_string(j));
    }
}

} // namespace

std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text, const std::string& what) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
        text.remove_prefix(1);
    }
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) {
        text.remove_suffix(1);
    }
    double value = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw IoError("could not parse " + what + " from \"" + std::string(text) + "\"");
    }
    return value;
}

Snapshot make_snapshot(const WaveParameters& params, const SurfaceState& state) {
    if (state.eta.size() != static_cast<std::size_t>(params.n) ||
        state.xi.size() != static_cast<std::size_t>(params.n)) {
        throw ConfigError("snapshot: state arrays do not match n = " + std::to_string(params.n));
    }
    Snapshot snap;
    snap.L = params.L;
    snap.n = params.n;
    snap.g = params.g;
    snap.omega = params.omega;
    snap.d_ref = params.d_ref;
    snap.t = state.t;
    snap.eta = state.eta;
    snap.xi = state.xi;
    return snap;
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << kMagic << ' ' << kVersion << '\n';
    out << "L " << format_double(snap.L) << '\n';
    out << "n " << snap.n << '\n';
    out << "g " << format_double(snap.g) << '\n';
    out << "omega " << format_double(snap.omega) << '\n';
    out << "d_ref " << format_double(snap.d_ref) << '\n';
    out << "t " << format_double(snap.t) << '\n';
    out << "eta\n";
    for (double v : snap.eta) {
        out << format_double(v) << '\n';
    }
    out << "xi\n";
    for (double v : snap.xi) {
        out << format_double(v) << '\n';
    }
    out.flush();
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open snapshot " + path.string());
    }
    std::string first = read_line(in, path, "format line");
    std::istringstream ss(first);
    std::string magic;
    int version = -1;
    if (!(ss >> magic >> version) || magic != kMagic) {
        throw IoError("snapshot " + path.string() + ": not a snapshot file (first line \"" +
                      first + "\")");
    }
    if (version != kVersion) {
        throw IoError("snapshot " + path.string() + ": format version " + std::to_string(version) +
                      " is not supported, this build reads version " + std::to_string(kVersion));
    }

    Snapshot snap;
    snap.L = read_header_value(in, path, "L");
    double n_raw = read_header_value(in, path, "n");
    snap.n = static_cast<int>(n_raw);
    if (static_cast<double>(snap.n) != n_raw || snap.n <= 0) {
        throw IoError("snapshot " + path.string() + ": n must be a positive integer");
    }
    snap.g = read_header_value(in, path, "g");
    snap.omega = read_header_value(in, path, "omega");
    snap.d_ref = read_header_value(in, path, "d_ref");
    snap.t = read_header_value(in, path, "t");
    read_array(in, path, "eta", snap.n, snap.eta);
    read_array(in, path, "xi", snap.n, snap.xi);
    return snap;
}

} // namespace vorwave
