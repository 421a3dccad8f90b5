#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "expbrush/complex_plane.hpp"
#include "expbrush/curve.hpp"
#include "expbrush/path.hpp"
#include "expbrush/png_io.hpp"
#include "expbrush/svg.hpp"

using nlohmann::json;
namespace eb = expbrush;

namespace {

// Exit codes: 0 success, 1 domain errors, 2 usage/config errors.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw UsageError("bad JSON in " + path + ": " + e.what());
    }
    return j;
}

// Optional JSON config; explicit flags override file values.
struct ConfigSource {
    json data;
    bool loaded = false;

    void load(const std::string& path) {
        data = load_json_file(path);
        if (!data.is_object()) throw UsageError("config must be a JSON object");
        if (data.value("schema", 1) != 1)
            throw UsageError("unsupported config schema (expected 1)");
        loaded = true;
    }
    template <typename T>
    void fill(const CLI::App* sub, const std::string& flag, const std::string& key,
              T& value) const {
        if (!loaded || sub->count(flag) > 0) return;
        if (data.contains(key)) value = data.at(key).get<T>();
    }
};

eb::ExternalAddress parse_address_arg(const std::string& text) {
    try {
        return eb::ExternalAddress::parse(text);
    } catch (const eb::Error& e) {
        throw UsageError(std::string("bad address: ") + e.what());
    }
}

std::vector<eb::ExternalAddress> parse_addresses(const std::vector<std::string>& inline_addrs,
                                                 const std::string& file) {
    std::vector<std::string> texts = inline_addrs;
    if (!file.empty()) {
        const json j = load_json_file(file);
        if (!j.contains("addresses") || !j.at("addresses").is_array())
            throw UsageError("address file needs an \"addresses\" array");
        for (const auto& a : j.at("addresses")) texts.push_back(a.get<std::string>());
    }
    std::vector<eb::ExternalAddress> out;
    for (const auto& t : texts) {
        try {
            out.push_back(eb::ExternalAddress::parse(t));
        } catch (const eb::Error& e) {
            throw UsageError(std::string("bad address: ") + e.what());
        }
    }
    return out;
}

eb::Rect parse_seed(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() != 4) throw UsageError("seed must be a,b,c,d");
    eb::Rect r;
    try {
        r.a = std::stod(parts[0]);
        r.b = std::stod(parts[1]);
        r.c = eb::rat_parse(parts[2]);
        r.d = eb::rat_parse(parts[3]);
    } catch (const std::exception& e) {
        throw UsageError(std::string("bad seed: ") + e.what());
    }
    if (!(r.a < r.b) || !(r.c < r.d)) throw UsageError("seed sides must be ordered");
    return r;
}

// "x,y" (y rational or decimal) for a plane point; "t@address" for a point
// on the hair of that address.
eb::PathEndpoint parse_endpoint(const std::string& text) {
    const auto at = text.find('@');
    try {
        if (at != std::string::npos) {
            eb::HairPoint hp;
            hp.t = std::stod(text.substr(0, at));
            hp.s = eb::ExternalAddress::parse(text.substr(at + 1));
            return hp;
        }
        const auto comma = text.find(',');
        if (comma == std::string::npos) throw UsageError("endpoint must be x,y or t@address");
        eb::PlanarPoint pp;
        pp.x = std::stod(text.substr(0, comma));
        pp.y = eb::rat_parse(text.substr(comma + 1));
        return pp;
    } catch (const eb::Error& e) {
        throw UsageError(std::string("bad endpoint '") + text + "': " + e.what());
    } catch (const std::exception& e) {
        throw UsageError(std::string("bad endpoint '") + text + "': " + e.what());
    }
}

void emit(const std::string& out_path, const std::string& contents) {
    if (out_path.empty() || out_path == "-") {
        std::cout << contents;
        return;
    }
    eb::write_file_atomic(out_path, contents);
}

json box_to_json(const eb::Box& b) {
    return json{{"a", b.a},
                {"b", b.b},
                {"c", eb::rat_to_string(b.c)},
                {"d", eb::rat_to_string(b.d)},
                {"level", b.level},
                {"parent", b.parent},
                {"witness", b.witness}};
}

json chain_to_json(const eb::FamilyChain& chain, const eb::SubBrush& sb,
                   std::size_t depth) {
    json levels = json::array();
    for (const auto& fam : chain.families) {
        json boxes = json::array();
        for (const auto& b : fam.boxes) boxes.push_back(box_to_json(b));
        levels.push_back(json{{"k", fam.level},
                              {"width", fam.width},
                              {"left", fam.left_edge},
                              {"right", fam.right_edge},
                              {"boxes", boxes}});
    }
    json addrs = json::array();
    for (const auto& a : sb.addresses) addrs.push_back(a.str());
    return json{{"schema", 1},
                {"offset", chain.offset},
                {"depth", depth},
                {"seed",
                 {{"a", chain.seed.a},
                  {"b", chain.seed.b},
                  {"c", eb::rat_to_string(chain.seed.c)},
                  {"d", eb::rat_to_string(chain.seed.d)}}},
                {"addresses", addrs},
                {"tips", sb.tips},
                {"levels", levels},
                {"terminated_early", chain.terminated_early}};
}

eb::FamilyChain chain_from_json(const json& j) {
    eb::FamilyChain chain;
    chain.offset = j.value("offset", 0);
    const auto& s = j.at("seed");
    chain.seed.a = s.at("a").get<double>();
    chain.seed.b = s.at("b").get<double>();
    chain.seed.c = eb::rat_parse(s.at("c").get<std::string>());
    chain.seed.d = eb::rat_parse(s.at("d").get<std::string>());
    chain.terminated_early = j.value("terminated_early", false);
    for (const auto& lv : j.at("levels")) {
        eb::BoxFamily fam;
        fam.level = lv.at("k").get<int>();
        fam.width = lv.at("width").get<double>();
        fam.left_edge = lv.at("left").get<double>();
        fam.right_edge = lv.at("right").get<double>();
        for (const auto& bj : lv.at("boxes")) {
            eb::Box b;
            b.a = bj.at("a").get<double>();
            b.b = bj.at("b").get<double>();
            b.c = eb::rat_parse(bj.at("c").get<std::string>());
            b.d = eb::rat_parse(bj.at("d").get<std::string>());
            b.level = bj.value("level", fam.level);
            b.parent = bj.value("parent", -1);
            b.witness = bj.value("witness", -1);
            fam.boxes.push_back(std::move(b));
        }
        chain.families.push_back(std::move(fam));
    }
    return chain;
}

json validation_to_json(const eb::ValidationReport& rep) {
    json conds = json::array();
    for (const auto& c : rep.conditions)
        conds.push_back(json{{"id", c.id}, {"pass", c.pass}, {"witness", c.witness}});
    return json{{"pass", rep.pass}, {"conditions", conds}, {"note", rep.note}};
}

json stats_to_json(const eb::CurveBuild& build) {
    json levels = json::array();
    for (const auto& st : build.stats)
        levels.push_back(json{{"k", st.level},
                              {"boxes", st.box_count},
                              {"max_deviation", st.max_dev},
                              {"bound_sqrt2_width", st.bound_sqrt2_w},
                              {"bound_five_over_k2", st.bound_five}});
    return levels;
}

json route_to_json(const eb::Route& route) {
    json verts = json::array();
    for (const auto& v : route.vertices) {
        if (v.y.index() == 0)
            verts.push_back(json{{"x", v.x}, {"y", eb::rat_to_string(std::get<eb::Rat>(v.y))}});
        else
            verts.push_back(json{{"x", v.x},
                                 {"address", std::get<eb::ExternalAddress>(v.y).str()}});
    }
    json contacts = json::array();
    for (const auto& c : route.contacts) {
        json checks = json::array();
        for (const auto& ch : c.checks)
            checks.push_back(json{{"j", ch.j}, {"pass", ch.pass}});
        contacts.push_back(json{{"address", c.s.str()},
                                {"t", c.t},
                                {"method", c.method},
                                {"certified", c.certified},
                                {"checks", checks}});
    }
    return json{{"schema", 1},
                {"case", route.kind},
                {"vertices", verts},
                {"contacts", contacts}};
}

int run_verify(std::uint64_t nmax, const std::string& table, std::uint64_t sums_kmax,
               const std::string& out) {
    std::ostringstream os;
    os.precision(17);
    bool all_pass = true;
    if (table == "lemma33") {
        os << "n,F^-n(1),3/n,pass\n";
        double v = 1.0;
        for (std::uint64_t n = 1; n <= nmax; ++n) {
            v = std::log1p(v);
            const double bound = 3.0 / static_cast<double>(n);
            const bool pass = v < bound;
            all_pass = all_pass && pass;
            os << n << "," << v << "," << bound << "," << (pass ? 1 : 0) << "\n";
        }
    } else if (table == "sums") {
        os << "k,partial_sum,pi^2/2,pass\n";
        const double bound = std::numbers::pi * std::numbers::pi / 2.0;
        for (std::uint64_t k = 1; k <= sums_kmax; ++k) {
            const double s = eb::inv_square_partial_sum(k);
            const bool pass = s < bound;
            all_pass = all_pass && pass;
            os << k << "," << s << "," << bound << "," << (pass ? 1 : 0) << "\n";
        }
    } else {
        throw UsageError("--table must be lemma33 or sums");
    }
    emit(out, os.str());
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"brush-model toolkit for exponential-family Julia dynamics"};
    app.require_subcommand(1);
    ConfigSource cfg;
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (schema 1); flags override");

    // verify
    auto* verify = app.add_subcommand("verify", "inequality tables as CSV");
    std::uint64_t nmax = 1000, sums_kmax = 100;
    std::string table = "lemma33", verify_out = "-";
    verify->add_option("--nmax", nmax, "largest n for the F^-n(1) < 3/n table");
    verify->add_option("--table", table, "lemma33 or sums");
    verify->add_option("--sums-kmax", sums_kmax, "largest k for the partial-sum table");
    verify->add_option("--out", verify_out, "output file (default stdout)");

    // tip
    auto* tipcmd = app.add_subcommand("tip", "hair tip of an address");
    std::string tip_addr;
    std::size_t tip_depth = 64;
    bool tip_sweep = false;
    std::string tip_out = "-";
    tipcmd->add_option("--address", tip_addr, "address, e.g. \"1,0\" or \"1|2,3\"")
        ->required();
    tipcmd->add_option("--depth", tip_depth, "recursion depth");
    tipcmd->add_flag("--sweep", tip_sweep, "CSV of tips for depths 1..depth");
    tipcmd->add_option("--out", tip_out, "output file (default stdout)");

    // classify
    auto* classify = app.add_subcommand("classify", "orbit classification of a model point");
    std::string cls_addr;
    double cls_t = 0.0;
    std::uint64_t cls_kmax = 6;
    std::string cls_out = "-";
    classify->add_option("--address", cls_addr)->required();
    classify->add_option("--t", cls_t, "potential")->required();
    classify->add_option("--kmax", cls_kmax, "largest double-square index checked");
    classify->add_option("--out", cls_out, "output file (default stdout)");

    // boxes
    auto* boxes = app.add_subcommand("boxes", "box families as JSON (or validate a file)");
    std::vector<std::string> box_addrs;
    std::string box_addr_file, box_seed = "-1,1,-1,1", box_out = "-", box_validate;
    int box_kmax = 3, box_offset = 0;
    std::size_t box_depth = 64;
    boxes->add_option("--address", box_addrs, "sub-brush address (repeatable)");
    boxes->add_option("--addresses", box_addr_file, "JSON file with {\"addresses\": [...]}");
    boxes->add_option("--depth", box_depth, "tip recursion depth");
    boxes->add_option("--kmax", box_kmax, "levels to build");
    boxes->add_option("--offset", box_offset, "level offset l");
    boxes->add_option("--seed", box_seed, "seed rectangle a,b,c,d (c,d rational)");
    boxes->add_option("--out", box_out, "output file (default stdout)");
    boxes->add_option("--validate", box_validate, "validate a families JSON file instead");

    // curve
    auto* curve = app.add_subcommand("curve", "detour curves and the closed curve as SVG+JSON");
    std::vector<std::string> cv_addrs;
    std::string cv_addr_file, cv_seed = "-1,1,-1,1", cv_out = "curve.svg", cv_json_out;
    int cv_kmax = 3, cv_offset = 0;
    std::size_t cv_depth = 64;
    std::string cv_localize;
    double cv_eps = 0.5;
    curve->add_option("--address", cv_addrs, "sub-brush address (repeatable)");
    curve->add_option("--addresses", cv_addr_file, "JSON file with {\"addresses\": [...]}");
    curve->add_option("--depth", cv_depth, "tip recursion depth");
    curve->add_option("--kmax", cv_kmax, "levels to build");
    curve->add_option("--offset", cv_offset, "level offset l");
    curve->add_option("--seed", cv_seed, "seed rectangle a,b,c,d");
    curve->add_option("--localize", cv_localize,
                      "build around x,y (rational y) instead of the seed");
    curve->add_option("--eps", cv_eps, "ball radius for --localize");
    curve->add_option("--out", cv_out, "SVG output file");
    curve->add_option("--json-out", cv_json_out, "JSON sidecar (default <out>.json)");

    // path
    auto* pathcmd = app.add_subcommand("path", "route between two points as SVG+JSON");
    std::vector<std::string> pt_addrs;
    std::string pt_addr_file, pt_from, pt_to, pt_out = "path.svg", pt_json_out;
    int pt_kmax = 3;
    std::size_t pt_depth = 64;
    pathcmd->add_option("--address", pt_addrs, "sub-brush address (repeatable)");
    pathcmd->add_option("--addresses", pt_addr_file, "JSON file with {\"addresses\": [...]}");
    pathcmd->add_option("--from", pt_from, "x,y or t@address")->required();
    pathcmd->add_option("--to", pt_to, "x,y or t@address")->required();
    pathcmd->add_option("--depth", pt_depth, "tip recursion depth");
    pathcmd->add_option("--kmax", pt_kmax, "curve levels for hair legs");
    pathcmd->add_option("--out", pt_out, "SVG output file");
    pathcmd->add_option("--json-out", pt_json_out, "JSON sidecar (default <out>.json)");

    // render
    auto* render = app.add_subcommand("render", "escape-time raster of the plane family");
    double rn_a = -1.0;
    std::string rn_viewport = "-4,4,-4,4", rn_size = "640x480", rn_out = "render.png";
    int rn_steps = 512;
    double rn_radius = 50.0, rn_eps = 1e-8;
    render->add_option("--a", rn_a, "parameter a <= -1");
    render->add_option("--viewport", rn_viewport, "x0,x1,y0,y1");
    render->add_option("--size", rn_size, "WxH pixels");
    render->add_option("--max-steps", rn_steps, "iteration budget");
    render->add_option("--escape-radius", rn_radius, "Re z threshold for escape");
    render->add_option("--eps-attract", rn_eps, "attraction radius");
    render->add_option("--out", rn_out, "PNG output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (!config_path.empty()) cfg.load(config_path);

        if (*verify) {
            cfg.fill(verify, "--nmax", "nmax", nmax);
            cfg.fill(verify, "--table", "table", table);
            cfg.fill(verify, "--sums-kmax", "sums_kmax", sums_kmax);
            cfg.fill(verify, "--out", "out", verify_out);
            return run_verify(nmax, table, sums_kmax, verify_out);
        }

        if (*tipcmd) {
            const auto addr = parse_address_arg(tip_addr);
            if (tip_depth < 1) throw UsageError("--depth must be >= 1");
            if (tip_sweep) {
                std::ostringstream os;
                os.precision(17);
                os << "depth,tip\n";
                for (std::size_t d = 1; d <= tip_depth; ++d)
                    os << d << "," << eb::tip(addr, d) << "\n";
                emit(tip_out, os.str());
            } else {
                json j{{"schema", 1},
                       {"address", addr.str()},
                       {"depth", tip_depth},
                       {"tip", eb::tip(addr, tip_depth)}};
                emit(tip_out, j.dump(2) + "\n");
            }
            return 0;
        }

        if (*classify) {
            const auto addr = parse_address_arg(cls_addr);
            if (cls_kmax < 5) throw UsageError("--kmax must be >= 5");
            if (cls_t < 0) throw UsageError("--t must be >= 0");
            const auto x = eb::ModelPoint::make(cls_t, addr);
            const std::size_t depth = static_cast<std::size_t>(2 * cls_kmax * cls_kmax);
            const auto trace = eb::orbit_lower_bounds(x, depth);
            json j{{"schema", 1}, {"address", addr.str()}, {"t", cls_t},
                   {"depth", depth}};
            if (!trace.ok()) {
                j["state"] = "LEFT-DOMAIN";
                j["failed_step"] = *trace.failed_index;
            } else {
                const auto cert = eb::certify_escape(x, cls_kmax);
                json checks = json::array();
                for (const auto& ch : cert.checks)
                    checks.push_back(json{{"k", ch.k}, {"pass", ch.pass}});
                j["certificate"] = checks;
                j["state"] = cert.passed ? "CERTIFIED-ESCAPING" : "UNKNOWN";
            }
            emit(cls_out, j.dump(2) + "\n");
            return 0;
        }

        if (*boxes) {
            cfg.fill(boxes, "--kmax", "kmax", box_kmax);
            cfg.fill(boxes, "--offset", "offset", box_offset);
            cfg.fill(boxes, "--seed", "seed", box_seed);
            cfg.fill(boxes, "--depth", "depth", box_depth);
            if (!box_validate.empty()) {
                const json j = load_json_file(box_validate);
                if (!j.contains("addresses"))
                    throw UsageError("families file needs an \"addresses\" array");
                std::vector<eb::ExternalAddress> as;
                for (const auto& a : j.at("addresses"))
                    as.push_back(eb::ExternalAddress::parse(a.get<std::string>()));
                const auto sb =
                    eb::make_sub_brush(std::move(as), j.value("depth", box_depth));
                const auto chain = chain_from_json(j);
                const auto rep = eb::validate_families(chain, sb);
                json out = validation_to_json(rep);
                out["schema"] = 1;
                emit(box_out, out.dump(2) + "\n");
                return rep.pass ? 0 : 1;
            }
            auto sb = eb::make_sub_brush(parse_addresses(box_addrs, box_addr_file),
                                         box_depth);
            if (sb.size() == 0) throw UsageError("boxes: no addresses given");
            const auto seed = parse_seed(box_seed);
            const auto chain = eb::build_chain(sb, box_kmax, box_offset, seed);
            const auto rep = eb::validate_families(chain, sb);
            json out = chain_to_json(chain, sb, box_depth);
            out["validation"] = validation_to_json(rep);
            emit(box_out, out.dump(2) + "\n");
            return rep.pass ? 0 : 1;
        }

        if (*curve) {
            cfg.fill(curve, "--kmax", "kmax", cv_kmax);
            cfg.fill(curve, "--offset", "offset", cv_offset);
            cfg.fill(curve, "--seed", "seed", cv_seed);
            cfg.fill(curve, "--depth", "depth", cv_depth);
            auto sb = eb::make_sub_brush(parse_addresses(cv_addrs, cv_addr_file),
                                         cv_depth);
            if (sb.size() == 0) throw UsageError("curve: no addresses given");
            json sidecar{{"schema", 1}, {"kmax", cv_kmax}};
            std::string svg;
            if (!cv_localize.empty()) {
                const auto comma = cv_localize.find(',');
                if (comma == std::string::npos)
                    throw UsageError("--localize needs x,y");
                const double x0 = std::stod(cv_localize.substr(0, comma));
                const eb::Rat y0 = eb::rat_parse(cv_localize.substr(comma + 1));
                auto loc = eb::localized_curve(x0, y0, cv_eps, sb, cv_kmax);
                sidecar["offset"] = loc.offset;
                sidecar["eps"] = loc.eps;
                sidecar["levels_built"] = loc.build.levels_built;
                sidecar["terminated_early"] = loc.build.chain.terminated_early;
                sidecar["levels"] = stats_to_json(loc.build);
                sidecar["cauchy_tail_bound"] = loc.build.cauchy_tail;
                sidecar["vertices"] = loc.jordan.loop.size();
                sidecar["simple"] = true;
                sidecar["winding"] = loc.jordan.winding;
                sidecar["validation"] =
                    validation_to_json(eb::validate_families(loc.build.chain, sb));
                svg = eb::curve_svg(loc.build, &loc.jordan, sb);
            } else {
                const auto seed = parse_seed(cv_seed);
                auto build = eb::build_curve(sb, cv_kmax, cv_offset, seed);
                auto jordan = eb::assemble_jordan(build.curve, seed);
                sidecar["offset"] = cv_offset;
                sidecar["levels_built"] = build.levels_built;
                sidecar["terminated_early"] = build.chain.terminated_early;
                sidecar["levels"] = stats_to_json(build);
                sidecar["cauchy_tail_bound"] = build.cauchy_tail;
                sidecar["vertices"] = jordan.loop.size();
                sidecar["simple"] = true;
                sidecar["winding"] = jordan.winding;
                sidecar["validation"] =
                    validation_to_json(eb::validate_families(build.chain, sb));
                svg = eb::curve_svg(build, &jordan, sb);
            }
            emit(cv_out, svg);
            const std::string jpath =
                cv_json_out.empty() ? cv_out + ".json" : cv_json_out;
            emit(jpath, sidecar.dump(2) + "\n");
            if (!sidecar["validation"]["pass"].get<bool>()) return 1;
            return 0;
        }

        if (*pathcmd) {
            const auto e0 = parse_endpoint(pt_from);
            const auto e1 = parse_endpoint(pt_to);
            auto addrs = parse_addresses(pt_addrs, pt_addr_file);
            // Hair endpoints implicitly belong to the sub-brush.
            for (const auto* ep : {&e0, &e1})
                if (const auto* hp = std::get_if<eb::HairPoint>(ep))
                    addrs.push_back(hp->s);
            auto sb = eb::make_sub_brush(std::move(addrs), pt_depth);
            const auto route = eb::path_between(e0, e1, sb, pt_kmax);
            emit(pt_out, eb::path_svg(route, sb));
            const std::string jpath =
                pt_json_out.empty() ? pt_out + ".json" : pt_json_out;
            emit(jpath, route_to_json(route).dump(2) + "\n");
            return 0;
        }

        if (*render) {
            cfg.fill(render, "--a", "a", rn_a);
            cfg.fill(render, "--viewport", "viewport", rn_viewport);
            cfg.fill(render, "--size", "size", rn_size);
            cfg.fill(render, "--max-steps", "max_steps", rn_steps);
            std::vector<double> vp;
            {
                std::stringstream ss(rn_viewport);
                std::string item;
                while (std::getline(ss, item, ',')) vp.push_back(std::stod(item));
            }
            if (vp.size() != 4) throw UsageError("--viewport needs x0,x1,y0,y1");
            int w = 0, h = 0;
            if (std::sscanf(rn_size.c_str(), "%dx%d", &w, &h) != 2 || w < 1 || h < 1)
                throw UsageError("--size needs WxH");
            const auto p = eb::make_parameter(rn_a);
            eb::ClassifyOptions opt;
            opt.max_steps = rn_steps;
            opt.escape_radius = rn_radius;
            opt.eps_attract = rn_eps;
            const auto img =
                eb::render(p, eb::Viewport{vp[0], vp[1], vp[2], vp[3]}, w, h, opt);
            eb::write_render_png(img, rn_out);
            return 0;
        }

        throw UsageError("no subcommand selected");
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const eb::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
