// Copyright 2026 The twinstats Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "twinstats/serialize.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace twinstats {

using ordered_json = nlohmann::ordered_json;

namespace {

template <class Tag>
ordered_json bins_to_json(const Histogram<Tag>& hist) {
    ordered_json arr = ordered_json::array();
    for (const auto& [k, c] : hist.bins()) arr.push_back({k, c});
    return arr;
}

u64 get_u64(const ordered_json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw FormatError(std::string("missing field \"") + key + "\"");
    if (!it->is_number_unsigned()) throw FormatError(std::string("field \"") + key + "\" is not an unsigned integer");
    return it->get<u64>();
}

template <class Tag>
Histogram<Tag> bins_from_json(const ordered_json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_array()) throw FormatError(std::string("missing array \"") + key + "\"");
    typename Histogram<Tag>::Bins bins;
    bool first = true;
    u64 prev = 0;
    for (const auto& bin : *it) {
        if (!bin.is_array() || bin.size() != 2 || !bin[0].is_number_unsigned() || !bin[1].is_number_unsigned())
            throw FormatError(std::string("\"") + key + "\" bins must be [key, count] pairs");
        u64 k = bin[0].get<u64>(), c = bin[1].get<u64>();
        if (!first && k <= prev) throw FormatError(std::string("\"") + key + "\" keys must be strictly ascending");
        if (c == 0) throw FormatError(std::string("\"") + key + "\" has a zero-count bin");
        bins.emplace(k, c);
        prev = k;
        first = false;
    }
    return Histogram<Tag>(std::move(bins));
}

ordered_json parse_object(std::string_view text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw FormatError("expected a JSON object");
    return j;
}

template <class Tag>
std::string histogram_csv(const Histogram<Tag>& hist, const char* header) {
    std::string out = header;
    out += '\n';
    for (const auto& [k, c] : hist.bins()) {
        out += std::to_string(k);
        out += ',';
        out += std::to_string(c);
        out += '\n';
    }
    return out;
}

u64 parse_field(std::string_view s, std::size_t line) {
    u64 v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw FormatError("CSV line " + std::to_string(line) + ": not an unsigned integer");
    return v;
}

template <class Tag>
Histogram<Tag> histogram_from_csv(std::string_view text, std::string_view header) {
    typename Histogram<Tag>::Bins bins;
    std::size_t line_no = 0;
    bool first_row = true;
    u64 prev = 0;
    while (!text.empty()) {
        auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (line_no == 1) {
            if (line != header) throw FormatError("CSV header must be \"" + std::string(header) + "\"");
            continue;
        }
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string_view::npos) throw FormatError("CSV line " + std::to_string(line_no) + ": missing comma");
        u64 k = parse_field(line.substr(0, comma), line_no);
        u64 c = parse_field(line.substr(comma + 1), line_no);
        if (!first_row && k <= prev) throw FormatError("CSV keys must be strictly ascending");
        bins.emplace(k, c);
        prev = k;
        first_row = false;
    }
    if (line_no == 0) throw FormatError("empty CSV");
    return Histogram<Tag>(std::move(bins));
}

}  // namespace

std::string checkpoint_to_json(const Checkpoint& cp) {
    ordered_json j;
    j["n"] = cp.n;
    j["pi"] = cp.pi;
    j["pi2"] = cp.pi2;
    j["d_max"] = cp.d_max;
    j["s_max"] = cp.s_max;
    j["head_primes"] = cp.head_primes;
    j["tail_primes"] = cp.tail_primes;
    j["overlap"] = cp.overlap;
    j["gap_hist"] = bins_to_json(cp.gap_hist);
    j["sep_hist"] = bins_to_json(cp.sep_hist);
    return j.dump() + "\n";
}

Checkpoint checkpoint_from_json(std::string_view text) {
    auto j = parse_object(text);
    Checkpoint cp;
    cp.n = get_u64(j, "n");
    cp.pi = get_u64(j, "pi");
    cp.pi2 = get_u64(j, "pi2");
    cp.d_max = get_u64(j, "d_max");
    cp.s_max = get_u64(j, "s_max");
    cp.head_primes = get_u64(j, "head_primes");
    cp.tail_primes = get_u64(j, "tail_primes");
    cp.overlap = get_u64(j, "overlap");
    cp.gap_hist = bins_from_json<GapTag>(j, "gap_hist");
    cp.sep_hist = bins_from_json<SeparationTag>(j, "sep_hist");
    if (cp.d_max != cp.gap_hist.max_key()) throw FormatError("d_max disagrees with gap_hist");
    if (cp.s_max != cp.sep_hist.max_key()) throw FormatError("s_max disagrees with sep_hist");
    return cp;
}

std::string state_to_json(const ScanState& s) {
    ordered_json j;
    j["schema_version"] = kStateSchemaVersion;
    j["position"] = s.position;
    j["last_prime"] = s.last_prime;
    j["prev_upper"] = s.prev_upper;
    j["primes_since"] = s.primes_since;
    j["pi"] = s.pi;
    j["pi2"] = s.pi2;
    j["head_primes"] = s.head_primes;
    j["overlap"] = s.overlap;
    j["gap_hist"] = bins_to_json(s.gap_hist);
    j["sep_hist"] = bins_to_json(s.sep_hist);
    return j.dump() + "\n";
}

ScanState state_from_json(std::string_view text) {
    auto j = parse_object(text);
    auto v = j.find("schema_version");
    if (v == j.end() || !v->is_number_integer() || v->get<int>() != kStateSchemaVersion)
        throw FormatError("resume file schema_version must be " + std::to_string(kStateSchemaVersion));
    ScanState s;
    s.position = get_u64(j, "position");
    s.last_prime = get_u64(j, "last_prime");
    s.prev_upper = get_u64(j, "prev_upper");
    s.primes_since = get_u64(j, "primes_since");
    s.pi = get_u64(j, "pi");
    s.pi2 = get_u64(j, "pi2");
    s.head_primes = get_u64(j, "head_primes");
    s.overlap = get_u64(j, "overlap");
    s.gap_hist = bins_from_json<GapTag>(j, "gap_hist");
    s.sep_hist = bins_from_json<SeparationTag>(j, "sep_hist");
    if (s.position < 2 || s.last_prime >= s.position || s.prev_upper > s.last_prime)
        throw FormatError("resume file positions are inconsistent");
    u64 tail = s.prev_upper == 0 ? 0 : s.primes_since;
    u64 classified = 2 * s.pi2 - s.overlap + s.sep_hist.weighted_total() + s.head_primes + tail;
    if (classified != s.pi) throw FormatError("resume file fails prime accounting");
    return s;
}

std::string to_csv(const GapHistogram& hist) { return histogram_csv(hist, "d,m"); }
std::string to_csv(const SeparationHistogram& hist) { return histogram_csv(hist, "s,mu"); }

GapHistogram gap_histogram_from_csv(std::string_view text) { return histogram_from_csv<GapTag>(text, "d,m"); }

SeparationHistogram separation_histogram_from_csv(std::string_view text) {
    return histogram_from_csv<SeparationTag>(text, "s,mu");
}

std::string checkpoint_filename(u64 n) { return "checkpoint_" + std::to_string(n) + ".json"; }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::filesystem::filesystem_error("cannot open for writing", tmp, std::make_error_code(std::errc::permission_denied));
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw std::filesystem::filesystem_error("write failed", tmp, std::make_error_code(std::errc::io_error));
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace twinstats
