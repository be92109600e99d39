// ranpart: command-line front end for the random-partition library.
//
// One binary, subcommand style. Every run is reproducible: all parameters
// (including the seed) are echoed into the output metadata, output contains
// no timestamps, and identical invocations produce byte-identical files.
// Exit codes: 0 success, 2 argument/usage errors, 3 numeric failures.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ranpart/errors.hpp"
#include "ranpart/gw.hpp"
#include "ranpart/kernels.hpp"
#include "ranpart/measures.hpp"
#include "ranpart/partition.hpp"
#include "ranpart/rational.hpp"
#include "ranpart/shapes.hpp"

using namespace ranpart;

namespace {

constexpr const char* kToolVersion = "ranpart 1.0.0";

std::string fmt_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

std::string csv_cell(const std::string& v) {
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string out = "\"";
    for (char c : v) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string render_csv(const Table& t) {
    std::string s;
    for (const auto& [k, v] : t.meta) s += "# " + k + "=" + v + "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        s += (i ? "," : "") + csv_cell(t.columns[i]);
    s += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            s += (i ? "," : "") + csv_cell(row[i]);
        s += '\n';
    }
    return s;
}

std::string render_json(const Table& t) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json meta;
    for (const auto& [k, v] : t.meta) meta[k] = v;
    j["meta"] = std::move(meta);
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            obj[t.columns[i]] = row[i];
        j["rows"].push_back(std::move(obj));
    }
    return j.dump(2) + "\n";
}

// --- small parsers (list flags are taken as strings so the metadata echo is
// exactly what the user typed) ------------------------------------------------

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    if (s.empty()) return out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_double(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw ArgumentError("");
        return v;
    } catch (const std::exception&) {
        throw ArgumentError("not a number: '" + s + "'");
    }
}

int parse_int(const std::string& s) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used != s.size()) throw ArgumentError("");
        return v;
    } catch (const std::exception&) {
        throw ArgumentError("not an integer: '" + s + "'");
    }
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& tok : split(s, ',')) out.push_back(parse_double(tok));
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (const auto& tok : split(s, ',')) out.push_back(parse_int(tok));
    return out;
}

mpq_class parse_rational(const std::string& s) {
    try {
        mpq_class q(s);
        q.canonicalize();
        return q;
    } catch (const std::exception&) {
        throw ArgumentError("not a rational: '" + s + "'");
    }
}

std::vector<mpq_class> parse_rational_list(const std::string& s) {
    std::vector<mpq_class> out;
    for (const auto& tok : split(s, ',')) out.push_back(parse_rational(tok));
    return out;
}

std::vector<Half> parse_half_list(const std::string& s) {
    std::vector<Half> out;
    for (const auto& tok : split(s, ',')) out.push_back(parse_half(tok));
    return out;
}

std::vector<Band> parse_bands(const std::string& s) {
    std::vector<Band> out;
    for (const auto& tok : split(s, ',')) {
        const auto parts = split(tok, ':');
        if (parts.size() != 2)
            throw ArgumentError("band must be written alpha:beta, got '" +
                                tok + "'");
        out.push_back({parse_double(parts[0]), parse_double(parts[1])});
    }
    return out;
}

std::vector<Partition> parse_branch(const std::string& s) {
    std::vector<Partition> out;
    for (const auto& tok : split(s, ';')) out.push_back(Partition::parse(tok));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and asymptotic computations with random partitions"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::string out_path;
    std::string format = "csv";
    bool exact = false;
    app.add_option("--seed", seed, "random seed recorded in all output");
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--exact", exact,
                 "exact rational output (rejected by float-only subcommands)");

    const auto common_meta = [&](const char* sub) {
        Table t;
        t.meta.emplace_back("tool", kToolVersion);
        t.meta.emplace_back("subcommand", sub);
        t.meta.emplace_back("seed", std::to_string(seed));
        t.meta.emplace_back("format", format);
        t.meta.emplace_back("exact", exact ? "true" : "false");
        return t;
    };
    const auto reject_exact = [&](const char* sub) {
        if (exact)
            throw ArgumentError(std::string(sub) +
                                ": --exact is not available here; this "
                                "subcommand produces floating-point results "
                                "only");
    };
    const auto emit = [&](const Table& t) {
        const std::string text =
            format == "json" ? render_json(t) : render_csv(t);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out_path, std::ios::binary);
            f << text;
            if (!f) throw ArgumentError("cannot write '" + out_path + "'");
        }
    };
    // gw and hurwitz always print their headline value to stdout as an exact
    // rational plus a decimal approximation; the table goes to --out if given.
    const auto emit_value = [&](Table t, const mpq_class& v) {
        std::cout << rational_str(v) << "\n"
                  << "decimal " << fmt_double(v.get_d()) << "\n";
        if (!out_path.empty()) emit(t);
    };

    // --- enumerate -----------------------------------------------------------
    auto* c_enum = app.add_subcommand("enumerate", "list all partitions of n");
    c_enum->fallthrough();
    int en_n = 0;
    int en_limit = 60;
    c_enum->add_option("--n", en_n, "partition size")->required();
    c_enum->add_option("--limit", en_limit, "refuse n beyond this bound");
    c_enum->callback([&] {
        Table t = common_meta("enumerate");
        t.meta.emplace_back("n", std::to_string(en_n));
        t.meta.emplace_back("limit", std::to_string(en_limit));
        t.columns = {"index", "partition", "num_parts", "dim"};
        const auto lams = enumerate_partitions(en_n, en_limit);
        for (std::size_t i = 0; i < lams.size(); ++i)
            t.rows.push_back({std::to_string(i), lams[i].str(),
                              std::to_string(lams[i].num_parts()),
                              dimension(lams[i]).get_str()});
        emit(t);
    });

    // --- dim -------------------------------------------------------------
    auto* c_dim = app.add_subcommand(
        "dim", "tableau count of one partition, by both formulas");
    c_dim->fallthrough();
    std::string dim_part;
    c_dim->add_option("--partition", dim_part, "comma-separated parts")
        ->required();
    c_dim->callback([&] {
        Table t = common_meta("dim");
        t.meta.emplace_back("partition", dim_part);
        t.columns = {"partition", "size", "dim_hook", "dim_det"};
        const Partition lam = Partition::parse(dim_part);
        t.rows.push_back({lam.str(), std::to_string(lam.size()),
                          dimension(lam).get_str(),
                          dimension_det(lam).get_str()});
        emit(t);
    });

    // --- measure-table ---------------------------------------------------
    auto* c_meas = app.add_subcommand(
        "measure-table", "weights of a measure family over small partitions");
    c_meas->fallthrough();
    std::string ms_name;
    int ms_n = 0, ms_emax = 8;
    double ms_xi = 1.0, ms_hbar = 1.0;
    std::string ms_t = "1", ms_tbar, ms_eps1 = "1", ms_eps2 = "1", ms_u;
    c_meas->add_option("--measure", ms_name, "family")
        ->required()
        ->check(CLI::IsMember(
            {"plancherel", "poissonized", "schur", "jack", "periodic"}));
    c_meas->add_option("--n", ms_n, "size (plancherel n / jack d)");
    c_meas->add_option("--emax", ms_emax, "enumerate |lambda| <= emax");
    c_meas->add_option("--xi", ms_xi, "poissonized/periodic intensity");
    c_meas->add_option("--hbar", ms_hbar, "periodic cell size");
    c_meas->add_option("--t", ms_t, "Schur parameters t_1,t_2,...");
    c_meas->add_option("--tbar", ms_tbar, "Schur parameters tbar (default t)");
    c_meas->add_option("--eps1", ms_eps1, "Jack parameter (rational)");
    c_meas->add_option("--eps2", ms_eps2, "Jack parameter (rational)");
    c_meas->add_option("--u", ms_u, "periodic residue potentials (rationals)");
    c_meas->callback([&] {
        Table t = common_meta("measure-table");
        t.meta.emplace_back("measure", ms_name);
        MeasureSpec spec = PlancherelSpec{ms_n};
        std::vector<Partition> lams;
        bool exact_family = false;
        if (ms_name == "plancherel") {
            t.meta.emplace_back("n", std::to_string(ms_n));
            spec = PlancherelSpec{ms_n};
            lams = enumerate_partitions(ms_n);
            exact_family = true;
        } else if (ms_name == "jack") {
            t.meta.emplace_back("n", std::to_string(ms_n));
            t.meta.emplace_back("eps1", ms_eps1);
            t.meta.emplace_back("eps2", ms_eps2);
            spec = JackSpec{parse_rational(ms_eps1), parse_rational(ms_eps2),
                            ms_n};
            lams = enumerate_partitions(ms_n);
            exact_family = true;
        } else {
            if (ms_name == "poissonized") {
                t.meta.emplace_back("xi", fmt_double(ms_xi));
                spec = PoissonizedPlancherelSpec{ms_xi};
            } else if (ms_name == "schur") {
                if (ms_tbar.empty()) ms_tbar = ms_t;
                t.meta.emplace_back("t", ms_t);
                t.meta.emplace_back("tbar", ms_tbar);
                spec = SchurSpec{parse_double_list(ms_t),
                                 parse_double_list(ms_tbar)};
            } else {
                t.meta.emplace_back("u", ms_u);
                t.meta.emplace_back("xi", fmt_double(ms_xi));
                t.meta.emplace_back("hbar", fmt_double(ms_hbar));
                spec = PeriodicSpec{parse_rational_list(ms_u), ms_xi, ms_hbar};
            }
            t.meta.emplace_back("emax", std::to_string(ms_emax));
            for (int s = 0; s <= ms_emax; ++s)
                for (const auto& lam : enumerate_partitions(s))
                    lams.push_back(lam);
        }
        validate(spec);
        if (exact && !exact_family)
            throw ArgumentError("measure-table: --exact is only available "
                                "for plancherel and jack; the '" +
                                ms_name + "' weights are not rational");
        const ZResult z = partition_function(
            spec, ms_name == "plancherel" || ms_name == "jack" ? ms_n
                                                               : ms_emax);
        t.meta.emplace_back("z_value", fmt_double(z.value));
        t.meta.emplace_back("z_tail_bound", fmt_double(z.tail_bound));
        if (z.exact) t.meta.emplace_back("z_exact", rational_str(*z.exact));
        t.columns = {"partition", "size", "weight"};
        for (const auto& lam : lams) {
            const std::string w = exact_family
                                      ? rational_str(weight_exact(spec, lam))
                                      : fmt_double(weight(spec, lam));
            t.rows.push_back({lam.str(), std::to_string(lam.size()), w});
        }
        emit(t);
    });

    // --- sample ------------------------------------------------------------
    auto* c_sample =
        app.add_subcommand("sample", "draw random partitions (seeded RSK)");
    c_sample->fallthrough();
    std::string sm_name = "plancherel";
    int sm_n = 0, sm_count = 1;
    double sm_xi = 1.0;
    c_sample->add_option("--measure", sm_name, "plancherel or poissonized")
        ->check(CLI::IsMember({"plancherel", "poissonized"}));
    c_sample->add_option("--n", sm_n, "plancherel size");
    c_sample->add_option("--xi", sm_xi, "poissonized intensity");
    c_sample->add_option("--count", sm_count, "number of draws");
    c_sample->callback([&] {
        if (sm_count < 1)
            throw ArgumentError("sample: --count must be positive");
        Table t = common_meta("sample");
        t.meta.emplace_back("measure", sm_name);
        if (sm_name == "plancherel")
            t.meta.emplace_back("n", std::to_string(sm_n));
        else
            t.meta.emplace_back("xi", fmt_double(sm_xi));
        t.meta.emplace_back("count", std::to_string(sm_count));
        t.columns = {"draw", "partition", "size", "first_part"};
        for (int i = 0; i < sm_count; ++i) {
            const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
            const Partition lam = sm_name == "plancherel"
                                      ? sample_plancherel(sm_n, s)
                                      : sample_poissonized(sm_xi, s);
            t.rows.push_back({std::to_string(i), lam.str(),
                              std::to_string(lam.size()),
                              std::to_string(lam.part(0))});
        }
        emit(t);
    });

    // --- shared kernel flags -------------------------------------------------
    struct KernelFlags {
        std::string name = "bessel";
        double xi = 1.0, a = 1.0, rz = 1.6, rw = 0.625;
        std::string t = "1", tbar, bands;
    };
    const auto add_kernel_flags = [](CLI::App* sub, KernelFlags& kf) {
        sub->add_option("--kernel", kf.name, "kernel family")
            ->check(CLI::IsMember({"bessel", "sine", "contour", "multiband"}));
        sub->add_option("--xi", kf.xi, "Bessel intensity");
        sub->add_option("--a", kf.a, "sine density parameter in [0,pi]");
        sub->add_option("--t", kf.t, "contour parameters t");
        sub->add_option("--tbar", kf.tbar, "contour parameters tbar");
        sub->add_option("--rz", kf.rz, "contour |z| radius");
        sub->add_option("--rw", kf.rw, "contour |w| radius");
        sub->add_option("--bands", kf.bands,
                        "multiband arcs alpha:beta,alpha:beta,...");
    };
    const auto kernel_from_flags = [](const KernelFlags& kf,
                                      Table& t) -> KernelSpec {
        t.meta.emplace_back("kernel", kf.name);
        if (kf.name == "bessel") {
            t.meta.emplace_back("xi", fmt_double(kf.xi));
            return BesselSpec{kf.xi};
        }
        if (kf.name == "sine") {
            t.meta.emplace_back("a", fmt_double(kf.a));
            return SineSpec{kf.a};
        }
        if (kf.name == "contour") {
            const std::string tbar = kf.tbar.empty() ? kf.t : kf.tbar;
            t.meta.emplace_back("t", kf.t);
            t.meta.emplace_back("tbar", tbar);
            t.meta.emplace_back("rz", fmt_double(kf.rz));
            t.meta.emplace_back("rw", fmt_double(kf.rw));
            SchurContourSpec spec;
            spec.t = parse_double_list(kf.t);
            spec.tbar = parse_double_list(tbar);
            spec.r_z = kf.rz;
            spec.r_w = kf.rw;
            return spec;
        }
        t.meta.emplace_back("bands", kf.bands);
        return MultiBandSpec{parse_bands(kf.bands)};
    };

    // --- correlate -----------------------------------------------------------
    auto* c_corr = app.add_subcommand(
        "correlate", "determinantal correlation over a point set");
    c_corr->fallthrough();
    KernelFlags co_k;
    std::string co_points;
    int co_brute = 0;
    add_kernel_flags(c_corr, co_k);
    c_corr->add_option("--points", co_points,
                       "half-integers odd/2, comma-separated")
        ->required();
    c_corr->add_option("--brute-emax", co_brute,
                       "also sum the measure directly up to this energy");
    c_corr->callback([&] {
        reject_exact("correlate");
        Table t = common_meta("correlate");
        const KernelSpec spec = kernel_from_flags(co_k, t);
        t.meta.emplace_back("points", co_points);
        const std::vector<Half> xs = parse_half_list(co_points);
        t.columns = {"points", "correlation"};
        std::vector<std::string> row{co_points,
                                     fmt_double(correlation(spec, xs))};
        if (co_brute > 0) {
            t.meta.emplace_back("brute_emax", std::to_string(co_brute));
            MeasureSpec m = PoissonizedPlancherelSpec{co_k.xi};
            if (co_k.name == "contour") {
                const auto& cs = std::get<SchurContourSpec>(spec);
                m = SchurSpec{cs.t, cs.tbar};
            } else if (co_k.name != "bessel") {
                throw ArgumentError("correlate: --brute-emax needs a kernel "
                                    "with a finite measure behind it (bessel "
                                    "or contour)");
            }
            const BruteResult b = brute_force_correlation(m, xs, co_brute);
            t.columns.push_back("brute_value");
            t.columns.push_back("brute_tail_bound");
            row.push_back(fmt_double(b.value));
            row.push_back(fmt_double(b.tail_bound));
        }
        t.rows.push_back(std::move(row));
        emit(t);
    });

    // --- gap -----------------------------------------------------------------
    auto* c_gap = app.add_subcommand(
        "gap", "gap probability det(I-K) or the first-part law");
    c_gap->fallthrough();
    KernelFlags gp_k;
    std::string gp_points;
    int gp_h = -1;
    add_kernel_flags(c_gap, gp_k);
    c_gap->add_option("--points", gp_points, "finite set B of half-integers");
    c_gap->add_option("--height", gp_h,
                      "Prob{lambda_1 <= h} under poissonized Plancherel "
                      "(uses --xi; ignores --points)");
    c_gap->callback([&] {
        reject_exact("gap");
        Table t = common_meta("gap");
        if (gp_h >= 0 && !gp_points.empty())
            throw ArgumentError("gap: give either --height or --points, not both");
        if (gp_h >= 0) {
            t.meta.emplace_back("kernel", "bessel");
            t.meta.emplace_back("xi", fmt_double(gp_k.xi));
            t.meta.emplace_back("height", std::to_string(gp_h));
            t.columns = {"height", "probability"};
            t.rows.push_back({std::to_string(gp_h),
                              fmt_double(lambda1_cdf_bessel(gp_k.xi, gp_h))});
        } else {
            if (gp_points.empty())
                throw ArgumentError("gap: need --points or --height");
            const KernelSpec spec = kernel_from_flags(gp_k, t);
            t.meta.emplace_back("points", gp_points);
            t.columns = {"points", "probability"};
            t.rows.push_back(
                {gp_points,
                 fmt_double(gap_probability(spec, parse_half_list(gp_points)))});
        }
        emit(t);
    });

    // --- kernel ----------------------------------------------------------
    auto* c_kern =
        app.add_subcommand("kernel", "one kernel entry K(x, y)");
    c_kern->fallthrough();
    KernelFlags kn_k;
    std::string kn_x = "1/2", kn_y = "1/2";
    add_kernel_flags(c_kern, kn_k);
    c_kern->add_option("--x", kn_x, "half-integer odd/2");
    c_kern->add_option("--y", kn_y, "half-integer odd/2");
    c_kern->callback([&] {
        reject_exact("kernel");
        Table t = common_meta("kernel");
        const KernelSpec spec = kernel_from_flags(kn_k, t);
        t.meta.emplace_back("x", kn_x);
        t.meta.emplace_back("y", kn_y);
        const std::complex<double> v =
            kernel_eval_c(spec, parse_half(kn_x), parse_half(kn_y));
        t.columns = {"x", "y", "value_re", "value_im"};
        t.rows.push_back(
            {kn_x, kn_y, fmt_double(v.real()), fmt_double(v.imag())});
        emit(t);
    });

    // --- limit-shape ---------------------------------------------------------
    auto* c_shape = app.add_subcommand(
        "limit-shape", "macroscopic density/slope profile of a Schur family");
    c_shape->fallthrough();
    std::string ls_t = "1", ls_tbar;
    double ls_xmin = -2.5, ls_xmax = 2.5;
    int ls_samples = 101;
    bool ls_arcs = false;
    double ls_level = 0.0;
    c_shape->add_option("--t", ls_t, "conjugate family parameters");
    c_shape->add_option("--tbar", ls_tbar, "must equal --t if given");
    c_shape->add_option("--xmin", ls_xmin, "grid start");
    c_shape->add_option("--xmax", ls_xmax, "grid end");
    c_shape->add_option("--samples", ls_samples, "grid size");
    c_shape->add_flag("--arcs", ls_arcs, "emit the band arcs at --level");
    c_shape->add_option("--level", ls_level, "level for --arcs");
    c_shape->callback([&] {
        reject_exact("limit-shape");
        Table t = common_meta("limit-shape");
        if (ls_tbar.empty()) ls_tbar = ls_t;
        t.meta.emplace_back("t", ls_t);
        t.meta.emplace_back("tbar", ls_tbar);
        const auto tv = parse_double_list(ls_t);
        const auto tb = parse_double_list(ls_tbar);
        if (ls_arcs) {
            t.meta.emplace_back("level", fmt_double(ls_level));
            const BandGapStructure bg = bands_at_level(tv, tb, ls_level);
            t.meta.emplace_back("density", fmt_double(bg.density()));
            t.meta.emplace_back("degenerate_warning",
                                bg.degenerate_warning ? "true" : "false");
            t.columns = {"alpha", "beta"};
            for (const auto& b : bg.bands)
                t.rows.push_back({fmt_double(b.alpha), fmt_double(b.beta)});
        } else {
            if (ls_samples < 2)
                throw ArgumentError("limit-shape: --samples must be >= 2");
            t.meta.emplace_back("xmin", fmt_double(ls_xmin));
            t.meta.emplace_back("xmax", fmt_double(ls_xmax));
            t.meta.emplace_back("samples", std::to_string(ls_samples));
            t.columns = {"x", "density", "slope"};
            for (int i = 0; i < ls_samples; ++i) {
                const double x = ls_xmin + (ls_xmax - ls_xmin) * i /
                                               (ls_samples - 1);
                const double rho = limit_density(tv, tb, x);
                t.rows.push_back({fmt_double(x), fmt_double(rho),
                                  fmt_double(1.0 - 2.0 * rho)});
            }
        }
        emit(t);
    });

    // --- hook-energy -----------------------------------------------------
    auto* c_hook = app.add_subcommand(
        "hook-energy", "quadratic hook-integral energy of a slope profile");
    c_hook->fallthrough();
    std::string he_profile = "vkls", he_slopes;
    int he_cells = 512;
    double he_hw = 3.0;
    c_hook->add_option("--profile", he_profile, "vkls or abs")
        ->check(CLI::IsMember({"vkls", "abs"}));
    c_hook->add_option("--slopes", he_slopes,
                       "explicit slope list (overrides --profile)");
    c_hook->add_option("--cells", he_cells, "grid cells");
    c_hook->add_option("--half-width", he_hw, "support half-width");
    c_hook->callback([&] {
        reject_exact("hook-energy");
        Table t = common_meta("hook-energy");
        DiscreteProfile f;
        if (!he_slopes.empty()) {
            t.meta.emplace_back("slopes", he_slopes);
            f.slopes = parse_double_list(he_slopes);
            f.lo = -he_hw;
            f.hi = he_hw;
        } else {
            t.meta.emplace_back("profile", he_profile);
            if (he_cells < 1)
                throw ArgumentError("hook-energy: --cells must be positive");
            if (he_profile == "vkls") {
                f = profile_from_slope(vkls_slope, -he_hw, he_hw,
                                       static_cast<std::size_t>(he_cells));
            } else {
                f = profile_from_slope([](double x) { return x < 0 ? -1.0
                                                                   : 1.0; },
                                       -he_hw, he_hw,
                                       static_cast<std::size_t>(he_cells));
            }
        }
        t.meta.emplace_back("cells", std::to_string(f.cells()));
        t.meta.emplace_back("half_width", fmt_double(he_hw));
        t.columns = {"cells", "energy"};
        t.rows.push_back(
            {std::to_string(f.cells()), fmt_double(hook_energy(f))});
        emit(t);
    });

    // --- maximize ----------------------------------------------------------
    auto* c_max = app.add_subcommand(
        "maximize", "direct concave maximizer of the shape action");
    c_max->fallthrough();
    std::string mx_u = "0";
    double mx_kappa = 0.0, mx_hw = 3.0, mx_tol = 1e-8;
    int mx_cells = 320;
    long mx_cap = 200000;
    c_max->add_option("--u", mx_u, "residue potentials u_0,...,u_{N-1}");
    c_max->add_option("--kappa", mx_kappa, "surface-tension strength");
    c_max->add_option("--cells", mx_cells, "grid cells");
    c_max->add_option("--half-width", mx_hw, "support half-width");
    c_max->add_option("--tol", mx_tol, "residual tolerance");
    c_max->add_option("--cap", mx_cap, "iteration cap");
    c_max->callback([&] {
        reject_exact("maximize");
        Table t = common_meta("maximize");
        t.meta.emplace_back("u", mx_u);
        t.meta.emplace_back("kappa", fmt_double(mx_kappa));
        t.meta.emplace_back("cells", std::to_string(mx_cells));
        t.meta.emplace_back("half_width", fmt_double(mx_hw));
        t.meta.emplace_back("tolerance", fmt_double(mx_tol));
        t.meta.emplace_back("iteration_cap", std::to_string(mx_cap));
        MaximizeOptions opts;
        if (mx_cells < 1)
            throw ArgumentError("maximize: --cells must be positive");
        opts.cells = static_cast<std::size_t>(mx_cells);
        opts.half_width = mx_hw;
        opts.tolerance = mx_tol;
        opts.iteration_cap = mx_cap;
        const MaximizeResult r =
            maximize_action(parse_double_list(mx_u), mx_kappa, opts);
        t.meta.emplace_back("action", fmt_double(r.action));
        t.meta.emplace_back("energy", fmt_double(r.energy));
        t.meta.emplace_back("iterations", std::to_string(r.iterations));
        t.meta.emplace_back("residual", fmt_double(r.residual));
        t.columns = {"x", "slope", "f"};
        for (std::size_t i = 0; i < r.profile.cells(); ++i) {
            const double x = r.profile.mid(i);
            t.rows.push_back({fmt_double(x), fmt_double(r.profile.slopes[i]),
                              fmt_double(r.profile.value(x))});
        }
        emit(t);
    });

    // --- sw-shape ----------------------------------------------------------
    auto* c_sw = app.add_subcommand(
        "sw-shape", "limit shape through the algebraic-curve route");
    c_sw->fallthrough();
    std::string sw_u, sw_coeffs;
    double sw_kappa = 1.0, sw_hw = 3.0;
    int sw_cells = 512;
    c_sw->add_option("--u", sw_u, "residue potentials (period matching)");
    c_sw->add_option("--kappa", sw_kappa, "surface-tension strength");
    c_sw->add_option("--coeffs", sw_coeffs,
                     "curve coefficients c_0,...,c_N (skips matching)");
    c_sw->add_option("--cells", sw_cells, "grid cells");
    c_sw->add_option("--half-width", sw_hw, "support half-width");
    c_sw->callback([&] {
        reject_exact("sw-shape");
        Table t = common_meta("sw-shape");
        SWCurveData curve;
        if (!sw_coeffs.empty()) {
            t.meta.emplace_back("coeffs", sw_coeffs);
            curve.coeffs = parse_double_list(sw_coeffs);
            validate_curve(curve);
        } else {
            if (sw_u.empty())
                throw ArgumentError("sw-shape: need --u (with --kappa) or "
                                    "--coeffs");
            t.meta.emplace_back("u", sw_u);
            t.meta.emplace_back("kappa", fmt_double(sw_kappa));
            const MatchResult mr =
                match_periods(parse_double_list(sw_u), sw_kappa);
            curve = mr.curve;
            t.meta.emplace_back("residual", fmt_double(mr.residual));
            t.meta.emplace_back("iterations", std::to_string(mr.iterations));
        }
        std::string cs;
        for (std::size_t i = 0; i < curve.coeffs.size(); ++i)
            cs += (i ? "," : "") + fmt_double(curve.coeffs[i]);
        t.meta.emplace_back("curve", cs);
        std::string bs;
        for (const auto& [a, b] : sw_bands(curve))
            bs += (bs.empty() ? "" : ";") + fmt_double(a) + ":" +
                  fmt_double(b);
        t.meta.emplace_back("bands", bs);
        std::string ps;
        for (double p : sw_periods(curve))
            ps += (ps.empty() ? "" : ",") + fmt_double(p);
        t.meta.emplace_back("periods", ps);
        if (sw_cells < 1)
            throw ArgumentError("sw-shape: --cells must be positive");
        const DiscreteProfile f = maximizer_from_map(
            curve, static_cast<std::size_t>(sw_cells), sw_hw);
        t.columns = {"x", "slope", "f"};
        for (std::size_t i = 0; i < f.cells(); ++i) {
            const double x = f.mid(i);
            t.rows.push_back({fmt_double(x), fmt_double(f.slopes[i]),
                              fmt_double(f.value(x))});
        }
        emit(t);
    });

    // --- gw ------------------------------------------------------------------
    auto* c_gw = app.add_subcommand(
        "gw", "stationary descendent partition sum (exact rational)");
    c_gw->fallthrough();
    int gw_d = 0, gw_genus = 0;
    std::string gw_ins;
    c_gw->add_option("--degree", gw_d, "cover degree")->required();
    c_gw->add_option("--insertions", gw_ins,
                     "descendent exponents k_1,k_2,... (empty for none)");
    c_gw->add_option("--target-genus", gw_genus, "target genus (default 0)");
    c_gw->callback([&] {
        Table t = common_meta("gw");
        t.meta.emplace_back("degree", std::to_string(gw_d));
        t.meta.emplace_back("insertions", gw_ins);
        t.meta.emplace_back("target_genus", std::to_string(gw_genus));
        GWQuery q{gw_d, parse_int_list(gw_ins), gw_genus};
        const mpq_class v = gw_stationary_target(q);
        t.columns = {"degree", "insertions", "target_genus", "value",
                     "decimal"};
        t.rows.push_back({std::to_string(gw_d), gw_ins,
                          std::to_string(gw_genus), rational_str(v),
                          fmt_double(v.get_d())});
        emit_value(std::move(t), v);
    });

    // --- hurwitz -------------------------------------------------------------
    auto* c_hur = app.add_subcommand(
        "hurwitz", "branched-cover count (exact rational)");
    c_hur->fallthrough();
    int hw_d = 1, hw_genus = 0;
    std::string hw_branch;
    bool hw_brute = false;
    c_hur->add_option("--degree", hw_d, "cover degree")->required();
    c_hur->add_option("--base-genus", hw_genus, "base curve genus");
    c_hur->add_option("--branch", hw_branch,
                      "branch classes: partitions separated by ';'");
    c_hur->add_flag("--brute", hw_brute,
                    "also count permutation tuples directly");
    c_hur->callback([&] {
        Table t = common_meta("hurwitz");
        t.meta.emplace_back("degree", std::to_string(hw_d));
        t.meta.emplace_back("base_genus", std::to_string(hw_genus));
        t.meta.emplace_back("branch", hw_branch);
        HurwitzQuery q{hw_d, hw_genus, parse_branch(hw_branch)};
        const mpq_class v = hurwitz_count(q);
        t.columns = {"degree", "base_genus", "branch", "value", "decimal"};
        std::vector<std::string> row{std::to_string(hw_d),
                                     std::to_string(hw_genus), hw_branch,
                                     rational_str(v), fmt_double(v.get_d())};
        if (hw_brute) {
            const mpq_class b = hurwitz_brute(q);
            t.columns.push_back("brute");
            row.push_back(rational_str(b));
        }
        t.rows.push_back(std::move(row));
        emit_value(std::move(t), v);
    });

    // --- elliptic-trace --------------------------------------------------
    auto* c_ell = app.add_subcommand(
        "elliptic-trace", "q-expansion of the weighted trace with insertions");
    c_ell->fallthrough();
    std::vector<std::string> el_z;
    int el_order = 10;
    c_ell->add_option("--z", el_z, "insertion point re:im (repeatable)");
    c_ell->add_option("--q-order", el_order, "truncation order in q");
    c_ell->callback([&] {
        reject_exact("elliptic-trace");
        Table t = common_meta("elliptic-trace");
        std::vector<std::complex<double>> zs;
        std::string echo;
        for (const auto& s : el_z) {
            const auto parts = split(s, ':');
            if (parts.size() != 2)
                throw ArgumentError("elliptic-trace: --z must be re:im, got '" +
                                    s + "'");
            zs.emplace_back(parse_double(parts[0]), parse_double(parts[1]));
            echo += (echo.empty() ? "" : ";") + s;
        }
        t.meta.emplace_back("z", echo);
        t.meta.emplace_back("q_order", std::to_string(el_order));
        const auto cs = elliptic_series(zs, el_order);
        t.columns = {"d", "coeff_re", "coeff_im"};
        for (std::size_t d = 0; d < cs.size(); ++d)
            t.rows.push_back({std::to_string(d), fmt_double(cs[d].real()),
                              fmt_double(cs[d].imag())});
        emit(t);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ArgumentError& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const InvariantError& e) {
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
