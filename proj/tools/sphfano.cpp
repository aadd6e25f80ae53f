// sphfano: command-line front end for the catalog of locally factorial
// Fano spherical embeddings of rank <= 2.

#include "sphfano/catalog.hpp"
#include "sphfano/error.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

using namespace sphfano;

namespace {

constexpr int kMismatch = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::IoError, "cannot write " + path);
    f << text;
}

std::string ke(const invariants::KVerdict& k) { return k.value == invariants::KValue::Stable ? "True" : "False"; }

int cmd_families(int dim, int rank, bool json) {
    if (json) {
        std::cout << registry::families_json();
        return 0;
    }
    std::printf("%-22s %3s %4s  %-12s %s\n", "id", "dim", "rank", "params", "values");
    for (const auto& s : registry::families(dim, rank)) {
        std::string names;
        for (const auto& n : s.param_names) names += (names.empty() ? "" : ",") + n;
        std::printf("%-22s %3d %4d  %-12s %zu\n", s.id.c_str(), s.dim, s.rank, names.empty() ? "-" : names.c_str(),
                    s.bound.empty() ? std::size_t{1} : s.bound.size());
    }
    return 0;
}

int cmd_enumerate(const std::string& family, const std::string& params_text, const std::string& json_path) {
    std::vector<registry::Params> todo;
    if (!params_text.empty()) {
        todo.push_back(registry::parse_params(params_text));
    } else {
        for (const auto& s : registry::families())
            if (s.id == family)
                for (const auto& p : s.bound) todo.push_back(p);
        if (todo.empty()) todo.emplace_back();
    }
    auto cfg = enumeration::EnumConfig::from_env();
    nlohmann::ordered_json docs = nlohmann::ordered_json::array();
    for (const auto& p : todo) {
        auto data = registry::build(family, p);
        if (data.rank == 0) throw Error(ErrorCode::ParamsOutOfDomain, "rank-0 families have no polytopes");
        auto found = enumeration::enumerate(data, cfg);
        std::cout << family << " [" << registry::format_params(p) << "]: " << found.size() << " polytopes\n";
        nlohmann::ordered_json doc;
        doc["family"] = family;
        doc["params"] = nlohmann::ordered_json::object();
        for (const auto& [name, v] : p) doc["params"][name] = v;
        doc["polytopes"] = nlohmann::ordered_json::array();
        for (const auto& c : found) {
            int pic = invariants::picard_rank(data, c.polytope);
            long deg = invariants::degree(data, c.polytope);
            long idx = invariants::fano_index(data, c.polytope);
            auto k = invariants::k_verdict(data, c.polytope);
            std::cout << "  " << geometry::to_string(c.polytope) << "  stab=" << c.stabilizer_size << " pic=" << pic
                      << " deg=" << deg << " index=" << idx << " k=" << invariants::kvalue_name(k.value) << "\n";
            nlohmann::ordered_json verts = nlohmann::ordered_json::array();
            for (const auto& v : c.polytope.vertices) {
                nlohmann::ordered_json xs = nlohmann::ordered_json::array();
                for (const auto& x : v) xs.push_back(x.str());
                verts.push_back(xs);
            }
            doc["polytopes"].push_back({{"vertices", verts},
                                        {"stabilizer", c.stabilizer_size},
                                        {"pic", pic},
                                        {"degree", deg},
                                        {"fano_index", idx},
                                        {"k_verdict", invariants::kvalue_name(k.value)}});
        }
        docs.push_back(doc);
    }
    auto doc = docs.size() == 1 ? docs[0] : docs;
    if (!json_path.empty()) write_out(json_path, doc.dump(2) + "\n");
    return 0;
}

int cmd_check(const std::string& family, const std::string& params_text, const std::string& vertices) {
    auto data = registry::build(family, registry::parse_params(params_text));
    auto poly = geometry::parse_polytope(vertices, data.rank);
    auto v = check_reflexive(data, poly);
    if (!v.ok) {
        std::cout << "not reflexive\n";
        for (const auto& x : v.violations) std::cout << "  " << x.condition << ": " << x.detail << "\n";
        return kMismatch;
    }
    auto canon = enumeration::canonical_form(data, poly);
    auto basis = invariants::divisor_basis(data, poly);
    auto k = invariants::k_verdict(data, poly);
    std::cout << "reflexive\n"
              << "  canonical   " << geometry::to_string(canon.polytope) << " (stabilizer " << canon.stabilizer_size
              << ")\n"
              << "  colors      " << basis.colors.size() << ", G-stable divisors " << basis.g_stable.size() << "\n"
              << "  pic         " << invariants::picard_rank(data, poly) << "\n"
              << "  degree      " << invariants::degree(data, poly) << "\n"
              << "  fano_index  " << invariants::fano_index(data, poly) << "\n"
              << "  moment      " << geometry::to_string(invariants::moment_polytope(data, poly).first) << " + kappa ("
              << data.kappa << ")\n"
              << "  barycenter  " << to_string(k.barycenter) << "\n"
              << "  k_verdict   " << invariants::kvalue_name(k.value) << " (KE " << ke(k) << ")\n";
    return 0;
}

void print_warnings(const catalog::Catalog& cat) {
    for (const auto& w : cat.warnings) std::cerr << "warning: " << w << "\n";
}

int cmd_catalog(std::vector<int> dims, std::vector<int> ranks, const std::string& out, const std::string& format,
                unsigned jobs) {
    if (dims.empty()) dims = {1, 2, 3, 4};
    if (ranks.empty()) ranks = {0, 1, 2};
    auto cat = catalog::build_catalog(dims, ranks, enumeration::EnumConfig::from_env(), jobs);
    print_warnings(cat);
    write_out(out, format == "json" ? catalog::to_json(cat) : catalog::to_csv(cat));
    return 0;
}

int cmd_verify(const std::string& expected, unsigned jobs) {
    auto cat = catalog::build_catalog({1, 2, 3, 4}, {0, 1, 2}, enumeration::EnumConfig::from_env(), jobs);
    print_warnings(cat);
    auto rep = catalog::verify(cat, expected);
    for (const auto& m : rep.mismatches)
        std::cout << "MISMATCH " << m.identifier << " " << m.field << ": expected " << m.expected << ", got "
                  << m.actual << "\n";
    std::cout << rep.rows << " rows checked, " << rep.mismatches.size() << " mismatches\n";
    return rep.ok() ? 0 : kMismatch;
}

int cmd_counts(unsigned jobs) {
    auto cat = catalog::build_catalog({1, 2, 3, 4}, {0, 1, 2}, enumeration::EnumConfig::from_env(), jobs);
    print_warnings(cat);
    auto t = catalog::counts_table(cat);
    std::printf("%-10s %5s %5s %5s %5s\n", "", "dim1", "dim2", "dim3", "dim4");
    for (int r = 0; r < 3; ++r)
        std::printf("rank = %-3d %5d %5d %5d %5d\n", r, t.grid[r][0], t.grid[r][1], t.grid[r][2], t.grid[r][3]);
    std::printf("%-10s %5d %5d %5d %5d\n", "rank <= 2", t.column_totals[0], t.column_totals[1], t.column_totals[2],
                t.column_totals[3]);
    std::printf("total %d\n", t.total);
    auto a = catalog::aggregates(cat, 4);
    std::printf("dim 4: %d KE, %d not KE, %d distinct (pic, degree), %d boundary cases\n", a.stable, a.not_stable,
                a.distinct_pic_degree, a.audit_flags);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Locally factorial Fano spherical embeddings of rank <= 2"};
    app.require_subcommand(1);

    int fam_dim = 0, fam_rank = -1;
    bool fam_json = false;
    auto* fam = app.add_subcommand("families", "List registered families");
    fam->add_option("--dim", fam_dim, "Only this dimension")->check(CLI::Range(1, 4));
    fam->add_option("--rank", fam_rank, "Only this rank")->check(CLI::Range(0, 2));
    fam->add_flag("--json", fam_json, "Print the full registry as JSON");

    std::string family, params, json_path, vertices;
    auto* en = app.add_subcommand("enumerate", "Enumerate reflexive polytopes of a family");
    en->add_option("--family", family, "Family id")->required();
    en->add_option("--params", params, "k=v,... (default: every admissible value)");
    en->add_option("--json", json_path, "Also write the results as JSON");

    auto* ck = app.add_subcommand("check", "Test one polytope and print its invariants");
    ck->add_option("--family", family, "Family id")->required();
    ck->add_option("--params", params, "k=v,...");
    ck->add_option("--vertices", vertices, "e.g. \"(-1,0);(0,1);(1/2,0)\"")->required();

    std::vector<int> dims, ranks;
    std::string out, format = "csv";
    unsigned jobs = 1;
    auto* cat = app.add_subcommand("catalog", "Build and emit the catalog");
    cat->add_option("--dim", dims, "Dimension (repeatable)")->check(CLI::Range(1, 4));
    cat->add_option("--rank", ranks, "Rank (repeatable)")->check(CLI::Range(0, 2));
    cat->add_option("--out", out, "Output path (default stdout)");
    cat->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cat->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    std::string expected;
    auto* ver = app.add_subcommand("verify", "Compare the catalog with an expected CSV");
    ver->add_option("--expected", expected, "CSV with identifier,pic,degree,ke columns")->required();
    ver->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    auto* cnt = app.add_subcommand("counts", "Print the counts grid");
    cnt->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    try {
        if (fam->parsed()) return cmd_families(fam_dim, fam_rank, fam_json);
        if (en->parsed()) return cmd_enumerate(family, params, json_path);
        if (ck->parsed()) return cmd_check(family, params, vertices);
        if (cat->parsed()) return cmd_catalog(dims, ranks, out, format, jobs);
        if (ver->parsed()) return cmd_verify(expected, jobs);
        if (cnt->parsed()) return cmd_counts(jobs);
    } catch (const Error& e) {
        std::cerr << "sphfano: " << e.what() << "\n";
        return is_internal(e.code()) ? kInternal : kUsage;
    } catch (const std::exception& e) {
        std::cerr << "sphfano: " << e.what() << "\n";
        return kInternal;
    }
    return kUsage;
}
