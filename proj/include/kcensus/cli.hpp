#pragma once

#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kcensus/bracket.hpp"
#include "kcensus/census.hpp"
#include "kcensus/cusp.hpp"
#include "kcensus/homology.hpp"

namespace kcensus {

namespace detail {

/// "a+bi", "a-bi", "bi", "i", or plain "a".
inline std::complex<double> parse_complex(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw Error(ErrorKind::BadFlag, "empty complex number");

    auto parse_part = [](std::string_view part, double fallback) {
        if (part.empty()) return fallback;
        if (part == "+") return fallback;
        if (part == "-") return -fallback;
        if (part.front() == '+') part.remove_prefix(1);  // from_chars rejects leading '+'
        auto v = parse_real(part);
        if (!v) throw Error(ErrorKind::BadFlag, "bad complex component '" + std::string(part) + "'");
        return *v;
    };

    if (s.back() != 'i' && s.back() != 'I') return {parse_part(s, 0.0), 0.0};

    std::string_view body(s.data(), s.size() - 1);
    // Split at the last +/- that is not leading and not an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if (body[i] != '+' && body[i] != '-') continue;
        char prev = body[i - 1];
        if (prev == 'e' || prev == 'E') continue;
        split = i;
        break;
    }
    if (split == std::string_view::npos) return {0.0, parse_part(body, 1.0)};
    return {parse_part(body.substr(0, split), 0.0), parse_part(body.substr(split), 1.0)};
}

inline std::string format_complex(const std::complex<double>& z) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.10g%+.10gi", z.real(), z.imag());
    return buf;
}

/// One --input value or the lines of a --file (blank and '#' lines skipped).
inline std::vector<std::string> gather_inputs(const std::string& input, const std::string& file) {
    if (!input.empty() && !file.empty())
        throw Error(ErrorKind::BadFlag, "--input and --file are mutually exclusive");
    if (!input.empty()) return {input};
    if (file.empty()) throw Error(ErrorKind::BadFlag, "need --input or --file");
    std::ifstream in(file);
    if (!in) throw Error(ErrorKind::BadField, "cannot open " + file);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        lines.emplace_back(t);
    }
    return lines;
}

/// Knot input in any accepted syntax: T-notation, "n: letters" braid word,
/// or a bare DT code.
inline PlanarDiagram diagram_of_input(std::string_view text) {
    auto t = trim(text);
    if (t.empty()) throw Error(ErrorKind::EmptyInput, "empty knot input");
    if (t.front() == 'T' || t.front() == 't') {
        auto spec = std::get<TTKSpec>(parse_knot_input(t));
        return braid_closure_pd(build_ttk(spec));
    }
    if (t.find(':') != std::string_view::npos) {
        auto word = std::get<BraidWord>(parse_knot_input(t));
        return braid_closure_pd(word);
    }
    return realize_dt(parse_dt(t));
}

inline IntMatrix read_matrix_tokens(std::vector<std::string_view>::const_iterator& it,
                                    std::vector<std::string_view>::const_iterator end, int rows,
                                    int cols, const char* what) {
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            if (it == end) throw Error(ErrorKind::BadField, std::string("missing entries in ") + what);
            try {
                m.at(i, j) = BigInt(std::string(*it));
            } catch (const std::exception&) {
                throw Error(ErrorKind::BadField,
                            std::string("bad integer '") + std::string(*it) + "' in " + what);
            }
            ++it;
        }
    return m;
}

inline std::vector<std::string_view> file_tokens(const std::string& path, std::string& storage) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::BadField, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    storage = buf.str();
    return split_tokens(storage, " \t\r\n");
}

inline int parse_int_token(std::string_view tok, const char* what) {
    auto v = parse_int(tok);
    if (!v) throw Error(ErrorKind::BadField, std::string("bad ") + what + " '" + std::string(tok) + "'");
    return static_cast<int>(*v);
}

inline Slope parse_slope(std::string text) {
    for (char& c : text)
        if (c == ',' || c == '/') c = ' ';
    auto toks = split_tokens(text, " \t");
    if (toks.size() != 2) throw Error(ErrorKind::BadFlag, "slope must be 'p,q'");
    return make_slope(parse_int_token(toks[0], "slope p"), parse_int_token(toks[1], "slope q"));
}

}  // namespace detail

/// Run one subcommand.  Returns the process exit status: 0 success, 1 input
/// error, 2 internal assertion failure.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"hyperbolic knot census toolkit"};
    app.require_subcommand(1);

    // jones
    std::string in_value, in_file;
    bool flag_mirror = false, flag_raw_bracket = false;
    auto* jones_cmd = app.add_subcommand("jones", "Jones polynomial of a knot input");
    jones_cmd->add_option("--input", in_value, "T-notation, braid word, or DT code");
    jones_cmd->add_option("--file", in_file, "file of one input per line");
    jones_cmd->add_flag("--mirror", flag_mirror, "use the mirror image");
    jones_cmd->add_flag("--raw-bracket", flag_raw_bracket, "print the Kauffman bracket in A instead");

    auto* dt_cmd = app.add_subcommand("dt-realize", "realize a DT code as a diagram");
    dt_cmd->add_option("--input", in_value, "DT code");
    dt_cmd->add_option("--file", in_file, "file of one DT code per line");

    auto* ttk_cmd = app.add_subcommand("ttk", "expand T-notation into a braid");
    ttk_cmd->add_option("--input", in_value, "T-notation");
    ttk_cmd->add_option("--file", in_file, "file of one T-notation per line");

    // slopes / reduce-basis
    double opt_m = 1.0, opt_bound = 6.0;
    std::string opt_l = "i";
    bool flag_no_reduce = false;
    auto* slopes_cmd = app.add_subcommand("slopes", "enumerate short slopes of a cusp basis");
    slopes_cmd->add_option("--m", opt_m, "meridian translation (positive real)")->required();
    slopes_cmd->add_option("--l", opt_l, "longitude translation, e.g. 0.5+2.1i")->required();
    slopes_cmd->add_option("--bound", opt_bound, "length bound (default 6)");
    slopes_cmd->add_flag("--no-reduce", flag_no_reduce, "fail instead of reducing a non-shortest basis");

    auto* reduce_cmd = app.add_subcommand("reduce-basis", "Lagrange-Gauss reduce a cusp basis");
    reduce_cmd->add_option("--m", opt_m, "meridian translation (positive real)")->required();
    reduce_cmd->add_option("--l", opt_l, "longitude translation")->required();

    std::uint64_t opt_samples = 1000000, opt_seed = 0;
    auto* audit_cmd = app.add_subcommand("audit-lemma", "randomized audit of the slope bounds");
    audit_cmd->add_option("--samples", opt_samples, "sample count (default 10^6)");
    audit_cmd->add_option("--seed", opt_seed, "RNG seed (default 0)");

    std::string opt_matrix, opt_presentation, opt_slope = "1,0";
    bool flag_full = false;
    auto* snf_cmd = app.add_subcommand("snf", "Smith normal form of an integer matrix");
    snf_cmd->add_option("--matrix", opt_matrix, "file: 'rows cols' then row-major entries")->required();
    snf_cmd->add_flag("--full", flag_full, "print U, D, V instead of the diagonal only");

    auto* fill_cmd = app.add_subcommand("fill-h1", "first homology of a Dehn filling");
    fill_cmd->add_option("--presentation", opt_presentation,
                         "file: 'g r', r relator rows, meridian row, longitude row")
        ->required();
    fill_cmd->add_option("--slope", opt_slope, "filling slope p,q")->required();

    int opt_tet = 8;
    std::string opt_census, opt_manifest;
    bool flag_csv = false;
    auto* sort_cmd = app.add_subcommand("census-sort", "sort and rename census records");
    sort_cmd->add_option("--file", opt_census, "census record file")->required();
    sort_cmd->add_option("--tet", opt_tet, "tetrahedra count used in assigned names")->required();

    auto* stats_cmd = app.add_subcommand("census-stats", "manifold/knot counts per tetrahedra class");
    stats_cmd->add_option("--manifest", opt_manifest, "manifest: tet,manifold_count,census_file")
        ->required();
    stats_cmd->add_flag("--csv", flag_csv, "machine-readable output");

    auto* lorenz_cmd = app.add_subcommand("census-lorenz", "Lorenz knot counts per tetrahedra class");
    lorenz_cmd->add_option("--manifest", opt_manifest, "manifest: tet,manifold_count,census_file")
        ->required();
    lorenz_cmd->add_flag("--csv", flag_csv, "machine-readable output");

    try {
        std::vector<const char*> argv;
        argv.push_back("kcensus");
        for (const auto& a : args) argv.push_back(a.c_str());
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp& e) {
            out << app.help();
            return 0;
        } catch (const CLI::ParseError& e) {
            const bool unknown = !args.empty() && args.front().size() && args.front()[0] != '-' &&
                                 app.get_subcommand_no_throw(args.front()) == nullptr;
            err << (unknown ? "UnknownCommand: " : "BadFlag: ") << e.what() << "\n";
            return 1;
        }

        if (jones_cmd->parsed()) {
            for (const auto& line : detail::gather_inputs(in_value, in_file)) {
                PlanarDiagram pd = detail::diagram_of_input(line);
                if (flag_mirror) pd = mirror_pd(pd);
                if (flag_raw_bracket) {
                    out << to_string(format_jones_entry(kauffman_bracket(pd))) << "\n";
                    continue;
                }
                // Even-component links have half-integer Jones exponents, which
                // the integer degree-span output cannot represent.
                if (component_count(pd) % 2 == 0)
                    throw Error(ErrorKind::BadField,
                                "'" + line + "' closes to a " +
                                    std::to_string(component_count(pd)) +
                                    "-component link; jones needs an odd component count");
                out << to_string(format_jones_entry(jones(pd))) << "\n";
            }
        } else if (dt_cmd->parsed()) {
            for (const auto& line : detail::gather_inputs(in_value, in_file)) {
                PlanarDiagram pd = realize_dt(parse_dt(line));
                out << "crossings=" << pd.crossings.size() << " writhe=" << writhe(pd)
                    << " dt=" << serialize_dt(extract_dt(pd)) << "\n";
            }
        } else if (ttk_cmd->parsed()) {
            for (const auto& line : detail::gather_inputs(in_value, in_file)) {
                auto input = parse_knot_input(line);
                const auto* spec = std::get_if<TTKSpec>(&input);
                if (!spec) throw Error(ErrorKind::SyntaxError, "ttk expects T-notation input");
                BraidWord word = build_ttk(*spec);
                out << to_string(word) << " | exponent_sum=" << exponent_sum(word)
                    << " components=" << closure_component_count(word)
                    << " lorenz=" << (is_lorenz_form(*spec) ? "yes" : "no") << "\n";
            }
        } else if (slopes_cmd->parsed()) {
            TranslationPair t;
            t.m = opt_m;
            t.l = detail::parse_complex(opt_l);
            if (flag_no_reduce) {
                if (!is_shortest_basis(t))
                    throw Error(ErrorKind::NotReduced, "basis is not shortest and --no-reduce is set");
                t.reduced = true;
            } else {
                t = reduce_basis(t);
            }
            for (const auto& s : enumerate_short_slopes(t, opt_bound)) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "%d %d %.6f", s.p, s.q, slope_length(t, s));
                out << buf << "\n";
            }
        } else if (reduce_cmd->parsed()) {
            TranslationPair t;
            t.m = opt_m;
            t.l = detail::parse_complex(opt_l);
            TranslationPair r = reduce_basis(t);
            char buf[96];
            std::snprintf(buf, sizeof buf, "%.10g", r.m);
            out << "m=" << buf << " l=" << detail::format_complex(r.l) << "\n";
        } else if (audit_cmd->parsed()) {
            out << to_string(audit_lemma_bounds(opt_samples, opt_seed));
        } else if (snf_cmd->parsed()) {
            std::string storage;
            auto tokens = detail::file_tokens(opt_matrix, storage);
            if (tokens.size() < 2) throw Error(ErrorKind::BadField, "matrix file needs 'rows cols'");
            auto it = tokens.cbegin();
            int rows = detail::parse_int_token(*it++, "row count");
            int cols = detail::parse_int_token(*it++, "column count");
            if (rows < 0 || cols < 0) throw Error(ErrorKind::BadField, "negative matrix size");
            IntMatrix a = detail::read_matrix_tokens(it, tokens.cend(), rows, cols, "matrix file");
            if (it != tokens.cend()) throw Error(ErrorKind::BadField, "trailing entries in matrix file");
            auto snf = smith_normal_form(a);
            if (flag_full) {
                out << "U:\n" << snf.u.to_string() << "D:\n" << snf.d.to_string() << "V:\n"
                    << snf.v.to_string();
            } else {
                out << "diag:";
                for (int t = 0; t < std::min(rows, cols); ++t) out << " " << snf.d.at(t, t);
                out << "\n";
            }
        } else if (fill_cmd->parsed()) {
            std::string storage;
            auto tokens = detail::file_tokens(opt_presentation, storage);
            if (tokens.size() < 2)
                throw Error(ErrorKind::BadField, "presentation file needs 'generators relators'");
            auto it = tokens.cbegin();
            int g = detail::parse_int_token(*it++, "generator count");
            int rels = detail::parse_int_token(*it++, "relator count");
            if (g < 0 || rels < 0) throw Error(ErrorKind::BadField, "negative presentation size");
            IntMatrix rows = detail::read_matrix_tokens(it, tokens.cend(), rels, g, "relator rows");
            IntMatrix mu = detail::read_matrix_tokens(it, tokens.cend(), 1, g, "meridian row");
            IntMatrix lam = detail::read_matrix_tokens(it, tokens.cend(), 1, g, "longitude row");
            if (it != tokens.cend())
                throw Error(ErrorKind::BadField, "trailing entries in presentation file");
            PeripheralPresentation pres;
            pres.relations = IntMatrix(g, rels);
            for (int i = 0; i < g; ++i)
                for (int j = 0; j < rels; ++j) pres.relations.at(i, j) = rows.at(j, i);
            pres.meridian_class.assign(g, 0);
            pres.longitude_class.assign(g, 0);
            for (int i = 0; i < g; ++i) {
                pres.meridian_class[i] = mu.at(0, i);
                pres.longitude_class[i] = lam.at(0, i);
            }
            AbelianGroup h = filled_homology(pres, detail::parse_slope(opt_slope));
            out << "filled H1: " << to_string(h) << "\n";
            out << "trivial: " << (is_trivial(h) ? "yes" : "no") << "\n";
        } else if (sort_cmd->parsed()) {
            std::ifstream in(opt_census);
            if (!in) throw Error(ErrorKind::BadField, "cannot open " + opt_census);
            for (const auto& r : sort_and_name(parse_census_file(in), opt_tet))
                out << serialize_census_record(r) << "\n";
        } else if (stats_cmd->parsed()) {
            auto table = stats_table(load_manifest(opt_manifest));
            out << (flag_csv ? render_csv(table) : render_text(table));
        } else if (lorenz_cmd->parsed()) {
            auto table = lorenz_count_table(load_manifest(opt_manifest));
            out << (flag_csv ? render_csv(table) : render_text(table));
        }
        return 0;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return is_internal(e.kind()) ? 2 : 1;
    } catch (const std::logic_error& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace kcensus
