// Copyright 2026 The esvqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include "esvqe/error.hpp"
#include "esvqe/integrals.hpp"

namespace esvqe {

namespace {

constexpr double kDuplicateTolerance = 1e-10;

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

long parse_int(std::string_view token, const char *what) {
    token = trim(token);
    long value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw FormatError(std::string("invalid integer for ") + what + ": '" + std::string(token) +
                          "'");
    }
    return value;
}

double parse_real(std::string token) {
    if (token.find('(') != std::string::npos) {
        throw FormatError("complex integral values are not supported");
    }
    // Fortran double-precision exponent markers.
    std::replace(token.begin(), token.end(), 'D', 'E');
    std::replace(token.begin(), token.end(), 'd', 'E');
    char *end = nullptr;
    const double value = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0') {
        throw FormatError("invalid integral value '" + token + "'");
    }
    return value;
}

struct Header {
    std::optional<long> norb;
    std::optional<long> nelec;
    long ms2 = 0;
    std::vector<int> orbsym;
};

// Parses the namelist text between "&FCI" and its terminator.
Header parse_header(std::string_view body) {
    Header header;
    std::string current_key;
    std::string token;
    std::vector<std::string> tokens;
    for (char c : body) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!token.empty()) tokens.push_back(token);
            token.clear();
        } else {
            token += c;
        }
    }
    if (!token.empty()) tokens.push_back(token);

    for (const std::string &t : tokens) {
        std::string_view value = t;
        const auto eq = t.find('=');
        if (eq != std::string::npos) {
            current_key = upper(trim(std::string_view(t).substr(0, eq)));
            value = std::string_view(t).substr(eq + 1);
            if (trim(value).empty()) {
                continue;
            }
        }
        if (current_key.empty()) {
            throw FormatError("FCIDUMP header value without a key: '" + t + "'");
        }
        if (current_key == "NORB") {
            header.norb = parse_int(value, "NORB");
        } else if (current_key == "NELEC") {
            header.nelec = parse_int(value, "NELEC");
        } else if (current_key == "MS2") {
            header.ms2 = parse_int(value, "MS2");
        } else if (current_key == "ORBSYM") {
            header.orbsym.push_back(static_cast<int>(parse_int(value, "ORBSYM")));
        }
        // ISYM, UHF and other keys are accepted and ignored.
    }
    return header;
}

} // namespace

MolecularIntegrals parse_fcidump(std::string_view text) {
    const std::string upper_text = upper(text);
    const auto start = upper_text.find("&FCI");
    if (start == std::string::npos) {
        throw FormatError("FCIDUMP is missing the &FCI namelist header");
    }
    const auto body_begin = start + 4;
    const auto end_amp = upper_text.find("&END", body_begin);
    const auto end_slash = upper_text.find('/', body_begin);
    const auto header_end = std::min(end_amp, end_slash);
    if (header_end == std::string::npos) {
        throw FormatError("FCIDUMP header is not terminated by '/' or '&END'");
    }
    const Header header = parse_header(text.substr(body_begin, header_end - body_begin));
    if (!header.norb) throw FormatError("FCIDUMP header lacks NORB");
    if (!header.nelec) throw FormatError("FCIDUMP header lacks NELEC");
    if (*header.norb <= 0) throw FormatError("NORB must be positive");

    MolecularIntegrals mi(static_cast<std::size_t>(*header.norb), static_cast<int>(*header.nelec),
                          static_cast<int>(header.ms2));
    if (!header.orbsym.empty()) {
        mi.set_orbsym(header.orbsym);
    }

    const std::size_t after = header_end + (header_end == end_amp ? 4 : 1);
    std::istringstream lines{std::string(text.substr(after))};
    std::map<std::tuple<long, long, long, long>, double> seen;
    const long norb = *header.norb;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string value_token;
        if (!(fields >> value_token)) {
            continue;
        }
        const double value = parse_real(value_token);
        long idx[4];
        for (long &k : idx) {
            std::string t;
            if (!(fields >> t)) {
                throw FormatError("integral line " + std::to_string(line_no) +
                                  " needs four indices");
            }
            k = parse_int(t, "integral index");
            if (k < 0 || k > norb) {
                throw IndexError("integral index " + std::to_string(k) + " outside [0, NORB]");
            }
        }
        auto [i, j, k, l] = idx;

        // Canonical key: i>=j, k>=l, (ij)>=(kl); one-body and core entries use zeros.
        if (i < j) std::swap(i, j);
        if (k < l) std::swap(k, l);
        if (k > 0 && std::make_pair(i, j) < std::make_pair(k, l)) {
            std::swap(i, k);
            std::swap(j, l);
        }
        const auto key = std::make_tuple(i, j, k, l);
        if (const auto it = seen.find(key); it != seen.end()) {
            if (std::abs(it->second - value) > kDuplicateTolerance) {
                throw ConsistencyError("conflicting duplicate integral on line " +
                                       std::to_string(line_no));
            }
        }
        seen[key] = value;

        if (i == 0 && j == 0 && k == 0 && l == 0) {
            mi.set_e_core(value);
        } else if (i > 0 && j > 0 && k > 0 && l > 0) {
            mi.set_eri(i - 1, j - 1, k - 1, l - 1, value);
        } else if (i > 0 && j > 0 && k == 0 && l == 0) {
            mi.set_h1(i - 1, j - 1, value);
        } else if (i > 0 && j == 0 && k == 0 && l == 0) {
            // Orbital energy; not needed.
        } else {
            throw FormatError("unrecognized index pattern on integral line " +
                              std::to_string(line_no));
        }
    }
    return mi;
}

MolecularIntegrals read_fcidump(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open FCIDUMP '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_fcidump(buffer.str());
}

std::string write_fcidump(const MolecularIntegrals &mi) {
    std::ostringstream os;
    const std::size_t n = mi.n_orb();
    os << " &FCI NORB=" << n << ",NELEC=" << mi.n_elec() << ",MS2=" << mi.ms2() << ",\n";
    os << "  ORBSYM=";
    for (std::size_t i = 0; i < n; ++i) {
        os << (i < mi.orbsym().size() ? mi.orbsym()[i] : 1) << ',';
    }
    os << "\n  ISYM=1,\n &END\n";

    char buf[96];
    auto emit = [&](double v, std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
        std::snprintf(buf, sizeof buf, "%.16E %4zu %4zu %4zu %4zu\n", v, i, j, k, l);
        os << buf;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            for (std::size_t k = 0; k <= i; ++k) {
                for (std::size_t l = 0; l <= (k == i ? j : k); ++l) {
                    const double v = mi.eri(i, j, k, l);
                    if (v != 0.0) {
                        emit(v, i + 1, j + 1, k + 1, l + 1);
                    }
                }
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            if (mi.h1(i, j) != 0.0) {
                emit(mi.h1(i, j), i + 1, j + 1, 0, 0);
            }
        }
    }
    emit(mi.e_core(), 0, 0, 0, 0);
    return os.str();
}

} // namespace esvqe
