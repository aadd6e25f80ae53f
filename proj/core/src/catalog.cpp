#include "sphfano/catalog.hpp"

#include "sphfano/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string_view>
#include <thread>
#include <tuple>

namespace sphfano::catalog {

namespace detail {
extern const std::string_view identifier_map_json;
}

using nlohmann::ordered_json;

bool operator==(const EmbeddingRecord& a, const EmbeddingRecord& b) {
    auto key = [](const EmbeddingRecord& r) {
        return std::tie(r.identifier, r.family, r.params, r.polytope, r.dim, r.rank, r.pic, r.degree, r.fano_index,
                        r.k_verdict.value, r.k_verdict.barycenter, r.group, r.space_type);
    };
    return key(a) == key(b);
}

namespace {

std::string polytope_key(const std::string& family, const registry::Params& p, const geometry::RationalPolytope& poly) {
    return family + "|" + registry::format_params(p) + "|" + geometry::to_string(poly);
}

registry::Params declared_order(const std::string& family, const registry::Params& p) {
    for (const auto& spec : registry::families()) {
        if (spec.id != family) continue;
        registry::Params out;
        for (const auto& n : spec.param_names)
            for (const auto& kv : p)
                if (kv.first == n) out.push_back(kv);
        if (out.size() == p.size()) return out;
    }
    return p;
}

struct MapIndex {
    std::vector<MapEntry> entries;
    std::map<std::string, std::string> by_key;  // polytope_key -> identifier
};

MapIndex index_map(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("identifier map: ") + e.what());
    }
    if (!doc.contains("entries") || !doc["entries"].is_array())
        throw Error(ErrorCode::ParseError, "identifier map: missing 'entries' array");

    MapIndex idx;
    std::set<std::string> seen;
    for (const auto& e : doc["entries"]) {
        MapEntry m;
        try {
            m.identifier = e.at("identifier").get<std::string>();
            m.family = e.at("family").get<std::string>();
            registry::Params raw;
            for (const auto& [k, v] : e.at("params").items()) raw.emplace_back(k, v.get<long>());
            m.params = declared_order(m.family, raw);
        } catch (const nlohmann::json::exception& ex) {
            throw Error(ErrorCode::ParseError, std::string("identifier map entry: ") + ex.what());
        }
        if (!seen.insert(m.identifier).second)
            throw Error(ErrorCode::MappingConflict, "identifier " + m.identifier + " listed twice");

        CombinatorialData data = registry::build(m.family, m.params);
        m.polytope = geometry::parse_polytope(e.at("vertices").get<std::string>(), data.rank);
        auto verdict = check_reflexive(data, m.polytope);
        if (!verdict.ok)
            throw Error(ErrorCode::NotReflexive, m.identifier + ": " + verdict.violations.front().condition + " " +
                                                     verdict.violations.front().detail);
        auto canon = enumeration::normal_form(data, m.polytope);
        auto key = polytope_key(m.family, m.params, canon.polytope);
        auto [it, fresh] = idx.by_key.emplace(key, m.identifier);
        if (!fresh)
            throw Error(ErrorCode::MappingConflict, m.identifier + " and " + it->second + " describe the same embedding");
        idx.entries.push_back(std::move(m));
    }
    return idx;
}

const MapIndex& bundled_index() {
    static const MapIndex idx = index_map(std::string(detail::identifier_map_json));
    return idx;
}

struct Job {
    registry::FamilySpec spec;
    registry::Params params;
};

std::vector<EmbeddingRecord> run_job(const Job& job, const enumeration::EnumConfig& cfg) {
    CombinatorialData data = registry::build(job.spec.id, job.params);
    std::vector<EmbeddingRecord> out;

    if (job.spec.rank == 0) {
        long k = job.params.front().second;
        const registry::Rank0Entry* row = nullptr;
        for (const auto& e : registry::rank0_entries())
            if (e.dim == job.spec.dim && --k == 0) row = &e;
        EmbeddingRecord r;
        r.identifier = std::to_string(job.spec.dim) + "-0-" + std::to_string(job.params.front().second);
        r.family = job.spec.id;
        r.params = job.params;
        r.polytope.polytope.rank = 0;
        r.dim = job.spec.dim;
        r.rank = 0;
        r.pic = row->pic;
        r.degree = row->degree;
        r.fano_index = row->fano_index;
        // G/P carries a Kähler-Einstein metric
        r.k_verdict.value = invariants::KValue::Stable;
        r.group = data.group;
        r.space_type = data.type;
        out.push_back(std::move(r));
        return out;
    }

    for (auto& c : enumeration::enumerate(data, cfg)) {
        EmbeddingRecord r;
        r.family = job.spec.id;
        r.params = job.params;
        r.dim = data.dim;
        r.rank = data.rank;
        r.pic = invariants::picard_rank(data, c.polytope);
        r.degree = invariants::degree(data, c.polytope);
        r.fano_index = invariants::fano_index(data, c.polytope);
        r.k_verdict = invariants::k_verdict(data, c.polytope);
        r.group = data.group;
        r.space_type = data.type;
        r.polytope = std::move(c);
        out.push_back(std::move(r));
    }
    return out;
}

std::tuple<int, int, int, long> sort_key(const EmbeddingRecord& r) {
    const std::string& id = r.identifier;
    bool computed = id.rfind("computed-", 0) == 0;
    long n = std::stol(id.substr(id.find_last_of('-') + 1));
    return {r.dim, r.rank, computed ? 1 : 0, n};
}

void sort_records(std::vector<EmbeddingRecord>& v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return sort_key(a) < sort_key(b); });
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) out.push_back(cell);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

std::string trim(std::string s) {
    auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && ws(s.back())) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && ws(s[i])) ++i;
    return s.substr(i);
}

const char* ke_string(const invariants::KVerdict& k) {
    return k.value == invariants::KValue::Stable ? "True" : "False";
}

} // namespace

std::vector<MapEntry> parse_identifier_map(const std::string& json_text) { return index_map(json_text).entries; }

const std::vector<MapEntry>& bundled_identifier_map() { return bundled_index().entries; }

Catalog build_catalog(const std::vector<int>& dims, const std::vector<int>& ranks, const enumeration::EnumConfig& cfg,
                      unsigned jobs) {
    for (int d : dims)
        if (d < 1 || d > 4) throw Error(ErrorCode::ParamsOutOfDomain, "dimension " + std::to_string(d) + " not in 1..4");
    for (int r : ranks)
        if (r < 0 || r > 2) throw Error(ErrorCode::ParamsOutOfDomain, "rank " + std::to_string(r) + " not in 0..2");
    cfg.validate();

    std::vector<Job> work;
    for (const auto& spec : registry::families()) {
        if (std::find(dims.begin(), dims.end(), spec.dim) == dims.end()) continue;
        if (std::find(ranks.begin(), ranks.end(), spec.rank) == ranks.end()) continue;
        for (const auto& p : spec.bound) work.push_back({spec, p});
    }

    std::vector<std::vector<EmbeddingRecord>> results(work.size());
    std::vector<std::exception_ptr> errors(work.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < work.size();) {
            try {
                results[i] = run_job(work[i], cfg);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(work.size())));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    Catalog cat;
    const MapIndex& idx = bundled_index();
    std::vector<EmbeddingRecord*> unmatched;
    std::map<std::string, const EmbeddingRecord*> claimed;
    for (auto& batch : results)
        for (auto& r : batch) cat.records.push_back(std::move(r));
    for (auto& r : cat.records) {
        if (r.rank == 0) continue;
        auto it = idx.by_key.find(polytope_key(r.family, r.params, r.polytope.polytope));
        if (it == idx.by_key.end()) {
            unmatched.push_back(&r);
            continue;
        }
        r.identifier = it->second;
    }
    for (const auto& r : cat.records) {
        if (r.identifier.empty()) continue;
        auto [it, fresh] = claimed.emplace(r.identifier, &r);
        if (!fresh) throw Error(ErrorCode::MappingConflict, "two records claim " + r.identifier);
    }

    // Synthetic identifiers numbered in (family, params, polytope) order so reruns agree.
    std::sort(unmatched.begin(), unmatched.end(), [](const EmbeddingRecord* a, const EmbeddingRecord* b) {
        return std::make_tuple(a->dim, a->rank, polytope_key(a->family, a->params, a->polytope.polytope)) <
               std::make_tuple(b->dim, b->rank, polytope_key(b->family, b->params, b->polytope.polytope));
    });
    std::map<std::pair<int, int>, int> next_k;
    for (auto* r : unmatched) {
        int k = ++next_k[{r->dim, r->rank}];
        r->identifier = "computed-" + std::to_string(r->dim) + "-" + std::to_string(r->rank) + "-" + std::to_string(k);
        cat.warnings.push_back("no identifier for " + r->family + " [" + registry::format_params(r->params) + "] " +
                               geometry::to_string(r->polytope.polytope) + "; assigned " + r->identifier);
    }

    sort_records(cat.records);
    for (const auto& r : cat.records) ++cat.counts[r.rank][r.dim - 1];
    return cat;
}

CountsTable counts_table(const Catalog& catalog) {
    CountsTable t;
    t.grid = catalog.counts;
    for (int r = 0; r < 3; ++r)
        for (int d = 0; d < 4; ++d) {
            t.column_totals[d] += t.grid[r][d];
            t.total += t.grid[r][d];
        }
    return t;
}

Aggregates aggregates(const Catalog& catalog, int dim) {
    Aggregates a;
    std::set<std::pair<int, long>> pairs;
    for (const auto& r : catalog.records) {
        if (r.dim != dim) continue;
        ++a.records;
        if (r.k_verdict.value == invariants::KValue::Stable)
            ++a.stable;
        else
            ++a.not_stable;
        if (r.needs_audit()) ++a.audit_flags;
        pairs.emplace(r.pic, r.degree);
    }
    a.distinct_pic_degree = static_cast<int>(pairs.size());
    return a;
}

VerifyReport verify_text(const Catalog& catalog, const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::MalformedExpectedFile, "empty file");
    auto header = split(trim(line), ',');
    auto column = [&](const std::string& name) -> int {
        auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : static_cast<int>(it - header.begin());
    };
    int c_id = column("identifier"), c_pic = column("pic"), c_deg = column("degree"), c_ke = column("ke");
    int c_group = column("group"), c_type = column("type");
    if (c_id < 0 || c_pic < 0 || c_deg < 0 || c_ke < 0)
        throw Error(ErrorCode::MalformedExpectedFile, "header must name identifier, pic, degree and ke");

    std::map<std::string, const EmbeddingRecord*> by_id;
    for (const auto& r : catalog.records) by_id[r.identifier] = &r;

    VerifyReport rep;
    std::set<std::string> seen;
    int lineno = 1;
    auto integer = [&](const std::string& s) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (s.empty() || used != s.size())
            throw Error(ErrorCode::MalformedExpectedFile, "line " + std::to_string(lineno) + ": '" + s + "' is not an integer");
        return v;
    };
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty()) continue;
        auto cells = split(line, ',');
        if (cells.size() != header.size())
            throw Error(ErrorCode::MalformedExpectedFile, "line " + std::to_string(lineno) + ": expected " +
                                                              std::to_string(header.size()) + " cells");
        const std::string& id = cells[c_id];
        if (!seen.insert(id).second)
            throw Error(ErrorCode::MalformedExpectedFile, "line " + std::to_string(lineno) + ": duplicate " + id);
        long pic = integer(cells[c_pic]);
        long deg = integer(cells[c_deg]);
        const std::string& ke = cells[c_ke];
        if (ke != "True" && ke != "False")
            throw Error(ErrorCode::MalformedExpectedFile, "line " + std::to_string(lineno) + ": ke must be True or False");
        ++rep.rows;

        auto it = by_id.find(id);
        if (it == by_id.end()) {
            rep.mismatches.push_back({id, "record", "present", "missing"});
            continue;
        }
        const EmbeddingRecord& r = *it->second;
        if (pic != r.pic) rep.mismatches.push_back({id, "pic", cells[c_pic], std::to_string(r.pic)});
        if (deg != r.degree) rep.mismatches.push_back({id, "degree", cells[c_deg], std::to_string(r.degree)});
        if (ke != ke_string(r.k_verdict)) rep.mismatches.push_back({id, "ke", ke, ke_string(r.k_verdict)});
        if (c_group >= 0 && cells[c_group] != r.group) rep.mismatches.push_back({id, "group", cells[c_group], r.group});
        if (c_type >= 0 && cells[c_type] != r.space_type)
            rep.mismatches.push_back({id, "type", cells[c_type], r.space_type});
    }
    return rep;
}

VerifyReport verify(const Catalog& catalog, const std::string& expected_csv_path) {
    std::ifstream f(expected_csv_path);
    if (!f) throw Error(ErrorCode::IoError, "cannot read " + expected_csv_path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return verify_text(catalog, ss.str());
}

std::string to_csv(const Catalog& catalog) {
    std::string out = "identifier,dim,rank,family,params,pic,degree,fano_index,ke,group,type\n";
    for (const auto& r : catalog.records) {
        out += r.identifier + "," + std::to_string(r.dim) + "," + std::to_string(r.rank) + "," + r.family + "," +
               registry::format_params(r.params) + "," + std::to_string(r.pic) + "," + std::to_string(r.degree) + "," +
               std::to_string(r.fano_index) + "," + ke_string(r.k_verdict) + "," + r.group + "," + r.space_type + "\n";
    }
    return out;
}

std::string to_json(const Catalog& catalog) {
    ordered_json root;
    root["records"] = ordered_json::array();
    for (const auto& r : catalog.records) {
        ordered_json j;
        j["identifier"] = r.identifier;
        j["dim"] = r.dim;
        j["rank"] = r.rank;
        j["family"] = r.family;
        j["params"] = ordered_json::object();
        for (const auto& [k, v] : r.params) j["params"][k] = v;
        j["polytope"] = {{"vertices", geometry::to_string(r.polytope.polytope)},
                         {"stabilizer", r.polytope.stabilizer_size}};
        j["pic"] = r.pic;
        j["degree"] = r.degree;
        j["fano_index"] = r.fano_index;
        ordered_json bary = ordered_json::array();
        for (const auto& x : r.k_verdict.barycenter) bary.push_back(x.str());
        j["k_verdict"] = {{"value", invariants::kvalue_name(r.k_verdict.value)}, {"barycenter", bary}};
        j["audit"] = r.needs_audit();
        j["group"] = r.group;
        j["type"] = r.space_type;
        root["records"].push_back(j);
    }
    root["counts"] = catalog.counts;
    root["warnings"] = catalog.warnings;
    return root.dump(2) + "\n";
}

Catalog catalog_from_json(const std::string& text) {
    Catalog cat;
    try {
        auto root = ordered_json::parse(text);
        for (const auto& j : root.at("records")) {
            EmbeddingRecord r;
            r.identifier = j.at("identifier").get<std::string>();
            r.dim = j.at("dim").get<int>();
            r.rank = j.at("rank").get<int>();
            r.family = j.at("family").get<std::string>();
            for (const auto& [k, v] : j.at("params").items()) r.params.emplace_back(k, v.get<long>());
            const auto& poly = j.at("polytope");
            if (r.rank == 0)
                r.polytope.polytope.rank = 0;
            else
                r.polytope.polytope = geometry::parse_polytope(poly.at("vertices").get<std::string>(), r.rank);
            r.polytope.stabilizer_size = poly.at("stabilizer").get<int>();
            r.pic = j.at("pic").get<int>();
            r.degree = j.at("degree").get<long>();
            r.fano_index = j.at("fano_index").get<long>();
            std::string v = j.at("k_verdict").at("value").get<std::string>();
            for (auto kv : {invariants::KValue::Stable, invariants::KValue::SemistableNotStable, invariants::KValue::Unstable})
                if (v == invariants::kvalue_name(kv)) r.k_verdict.value = kv;
            for (const auto& x : j.at("k_verdict").at("barycenter")) r.k_verdict.barycenter.push_back(Rat::parse(x.get<std::string>()));
            r.group = j.at("group").get<std::string>();
            r.space_type = j.at("type").get<std::string>();
            cat.records.push_back(std::move(r));
        }
        cat.counts = root.at("counts").get<CountsGrid>();
        cat.warnings = root.at("warnings").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("catalog json: ") + e.what());
    }
    return cat;
}

void emit(const Catalog& catalog, Format format, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::IoError, "cannot write " + path);
    f << (format == Format::Csv ? to_csv(catalog) : to_json(catalog));
    if (!f) throw Error(ErrorCode::IoError, "write failed for " + path);
}

} // namespace sphfano::catalog
