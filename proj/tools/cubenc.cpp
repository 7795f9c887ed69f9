// cubenc: enumerate singular fade subspaces, build and check relay maps, query
// distances and run the BER simulation.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cubenc/io.hpp"

namespace {

using namespace cubenc;
using nlohmann::json;

enum Exit : int {
    kOk = 0,
    kFailure = 1,
    kUsage = 2,
    kFormat = 3,
    kNonRemovable = 4,
    kInvalidMap = 5,
};

struct Failure {
    int code;
    std::string message;
};

struct Options {
    bool json = false;

    std::string out;

    int class_id = -1;
    bool non_adaptive = false;

    std::string map_path;
    std::string h;
    double tol = 1e-9;

    std::string scheme = "adaptive";
    double rician_k = 10.0;
    double variance = 0.0;
    std::string snr = "0:2:40";
    int frames = 1000;
    int frame_len = 256;
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{kFailure, "cannot open " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Failure{kFailure, "cannot write " + path};
    out << text;
    if (!out) throw Failure{kFailure, "write failed: " + path};
}

io::MapFile load_map(const std::string& path) {
    try {
        return io::parse_map_file(read_file(path));
    } catch (const io::FormatError& e) {
        throw Failure{kFormat, path + ": " + e.what()};
    }
}

io::MapFile map_for_class(int id) {
    const SubspaceClass* k = nullptr;
    try {
        k = &class_by_id(id);
    } catch (const std::out_of_range&) {
        throw Failure{kUsage, "class id " + std::to_string(id) + " is outside 0.." +
                                  std::to_string(singular_classes().size() - 1)};
    }
    try {
        return {complete(constraints_for(*k)), k->id, k->canonical};
    } catch (const NonRemovableError& e) {
        throw Failure{kNonRemovable, e.what()};
    }
}

int cmd_enumerate(const Options& o) {
    const auto& classes = singular_classes();
    const io::Census c = io::census(classes);
    json all = json::array();
    for (const auto& k : classes) all.push_back(io::to_json(k));
    if (!o.out.empty()) write_text(o.out, all.dump(2) + "\n");
    if (o.json) {
        json j = io::to_json(c);
        if (o.out.empty()) j["classes"] = all;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << io::census_line(c) << "\n";
        std::cout << "case3 by D1 components: one=" << c.case3_by_d1[1] << " two=" << c.case3_by_d1[2]
                  << " three=" << c.case3_by_d1[3] << "\n";
    }
    return kOk;
}

int cmd_build_map(const Options& o) {
    const io::MapFile f = o.non_adaptive ? io::MapFile{xor_map(), std::nullopt, std::nullopt} : map_for_class(o.class_id);
    const std::string text = io::to_json(f).dump(2) + "\n";
    if (o.out.empty()) {
        std::cout << text;
        return kOk;
    }
    write_text(o.out, text);
    if (o.json)
        std::cout << json{{"file", o.out}, {"t", f.map.label_count()}, {"class_id", f.class_id ? json(*f.class_id) : json()}}
                         .dump()
                  << "\n";
    else
        std::cout << "wrote " << o.out << " t=" << f.map.label_count() << "\n";
    return kOk;
}

int cmd_build_all(const Options& o) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(o.out, ec);
    if (ec) throw Failure{kFailure, "cannot create " + o.out + ": " + ec.message()};
    json index = json::array();
    for (const auto& k : singular_classes()) {
        if (!k.removable) continue;
        const io::MapFile f = map_for_class(k.id);
        char name[32];
        std::snprintf(name, sizeof name, "class_%03d.json", k.id);
        write_text((fs::path(o.out) / name).string(), io::to_json(f).dump(2) + "\n");
        index.push_back({{"file", name}, {"class_id", k.id}, {"t", f.map.label_count()}});
    }
    write_text((fs::path(o.out) / "fixed.json").string(),
               io::to_json(io::MapFile{xor_map(), std::nullopt, std::nullopt}).dump(2) + "\n");
    index.push_back({{"file", "fixed.json"}, {"class_id", nullptr}, {"t", xor_map().label_count()}});
    if (o.json)
        std::cout << index.dump() << "\n";
    else
        std::cout << "wrote " << index.size() << " maps to " << o.out << "\n";
    return kOk;
}

int cmd_validate(const Options& o) {
    const io::MapFile f = load_map(o.map_path);
    if (!exclusive_law_ok(f.map)) throw Failure{kInvalidMap, o.map_path + ": exclusive law violated (a slice repeats a label)"};

    std::optional<int> cls;
    std::optional<bool> removed;
    if (f.canonical) {
        const SubspaceClass& k = class_of(*f.canonical);
        if (f.class_id && *f.class_id != k.id)
            throw Failure{kFormat, o.map_path + ": class_id " + std::to_string(*f.class_id) +
                                       " does not match canonical vector (class " + std::to_string(k.id) + ")"};
        cls = k.id;
        removed = removes(f.map, k);
    } else if (f.class_id) {
        try {
            cls = *f.class_id;
            removed = removes(f.map, class_by_id(*f.class_id));
        } catch (const std::out_of_range&) {
            throw Failure{kFormat, o.map_path + ": unknown class_id " + std::to_string(*f.class_id)};
        }
    }
    if (removed && !*removed)
        throw Failure{kInvalidMap, o.map_path + ": map does not remove class " + std::to_string(*cls)};

    if (o.json) {
        std::cout << json{{"ok", true}, {"t", f.map.label_count()}, {"class_id", cls ? json(*cls) : json()},
                          {"removes", removed ? json(*removed) : json()}}
                         .dump()
                  << "\n";
    } else {
        std::cout << "OK t=" << f.map.label_count();
        if (cls) std::cout << " removes class " << *cls;
        std::cout << "\n";
    }
    return kOk;
}

FadeState parse_h(const std::string& spec) {
    try {
        return io::parse_fade_state(spec);
    } catch (const io::FormatError& e) {
        throw Failure{kFormat, std::string("--h: ") + e.what()};
    }
}

int cmd_dmin(const Options& o) {
    const io::MapFile f = load_map(o.map_path);
    const FadeState h = parse_h(o.h);
    const double dc = dmin_cluster(f.map, h);
    const double df = dmin_fade(h);
    if (o.json)
        std::cout << json{{"dmin_cluster", dc}, {"dmin_fade", df}}.dump() << "\n";
    else
        std::cout << "dmin_cluster=" << io::format_double(dc) << " dmin_fade=" << io::format_double(df) << "\n";
    return kOk;
}

int cmd_classify(const Options& o) {
    const FadeState h = parse_h(o.h);
    if (!(o.tol >= 0)) throw Failure{kUsage, "--tol must be non-negative"};
    const auto id = is_singular(h, o.tol);
    if (o.json) {
        json j{{"singular", id.has_value()}, {"dmin_fade", dmin_fade(h)}};
        if (id) {
            const auto& k = class_by_id(*id);
            j["class_id"] = k.id;
            j["case"] = io::case_name(k.fade_case);
            j["removable"] = k.removable;
            j["canonical"] = io::to_json(k.canonical);
        }
        std::cout << j.dump() << "\n";
    } else if (id) {
        const auto& k = class_by_id(*id);
        std::cout << "singular class=" << k.id << " " << io::case_name(k.fade_case) << " canonical=" << k.canonical
                  << (k.removable ? " removable" : " non-removable") << "\n";
    } else {
        std::cout << "generic dmin_fade=" << io::format_double(dmin_fade(h)) << "\n";
    }
    return kOk;
}

int cmd_simulate(const Options& o) {
    SimConfig cfg;
    try {
        cfg.snr_db_list = io::parse_snr_range(o.snr);
    } catch (const io::FormatError& e) {
        throw Failure{kFormat, std::string("--snr: ") + e.what()};
    }
    cfg.frames = o.frames;
    cfg.frame_len_bits = o.frame_len;
    cfg.scheme = o.scheme == "fixed" ? Scheme::NonAdaptive : Scheme::Adaptive;
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    const ChannelModel model{o.rician_k, o.variance};

    std::vector<BerRecord> recs;
    try {
        recs = run_sim(cfg, cfg.scheme == Scheme::Adaptive ? MapCatalog::build() : MapCatalog{{}, MapProfile{xor_map(), std::nullopt}},
                       model);
    } catch (const ConfigError& e) {
        throw Failure{kUsage, e.what()};
    }

    std::ostringstream csv;
    io::write_ber_csv(csv, cfg.scheme, o.rician_k, recs);
    if (o.out.empty()) {
        std::cout << csv.str();
    } else {
        write_text(o.out, csv.str());
        if (o.json)
            std::cout << json{{"file", o.out}, {"records", recs.size()}}.dump() << "\n";
        else
            std::cout << "wrote " << recs.size() << " records to " << o.out << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive network coding maps for the 4-PSK three-way relay channel"};
    // "--h" names the fade state, so help is long-form only
    app.set_help_flag("--help", "Print this help message and exit");
    app.fallthrough();
    app.require_subcommand(1);
    Options o;
    app.add_flag("--json", o.json, "Machine-readable output");

    auto* enumerate = app.add_subcommand("enumerate", "Census of singular fade subspaces");
    enumerate->add_option("--out", o.out, "Write all classes as JSON to this file");

    auto* build_map = app.add_subcommand("build-map", "Build the relay map removing one subspace");
    auto* id_opt = build_map->add_option("--class-id", o.class_id, "Subspace class id");
    auto* na_opt = build_map->add_flag("--non-adaptive", o.non_adaptive, "Emit the fixed 16-label map instead");
    id_opt->excludes(na_opt);
    build_map->add_option("--out", o.out, "Output file (default: stdout)");

    auto* build_all = app.add_subcommand("build-all", "Build maps for every removable subspace");
    build_all->add_option("--out", o.out, "Output directory")->required();

    auto* validate = app.add_subcommand("validate", "Check a map file");
    validate->add_option("file", o.map_path, "Map file")->required();

    auto* dmin = app.add_subcommand("dmin", "Minimum cluster distance of a map at a fade state");
    dmin->add_option("--map", o.map_path, "Map file")->required();
    dmin->add_option("--h", o.h, "Fade state \"re,im re,im re,im\"")->required();

    auto* classify = app.add_subcommand("classify-fade", "Report the singular subspace containing h, if any");
    classify->add_option("--h", o.h, "Fade state \"re,im re,im re,im\"")->required();
    classify->add_option("--tol", o.tol, "Relative tolerance");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo BER sweep");
    simulate->add_option("--scheme", o.scheme, "adaptive or fixed")->check(CLI::IsMember({"adaptive", "fixed"}));
    simulate->add_option("--rician-k", o.rician_k, "Rician K factor in dB");
    simulate->add_option("--variance", o.variance, "Total channel power in dB");
    simulate->add_option("--snr", o.snr, "start:step:stop or comma list, in dB");
    simulate->add_option("--frames", o.frames, "Frames per SNR point");
    simulate->add_option("--frame-len", o.frame_len, "Message bits per node per frame");
    simulate->add_option("--seed", o.seed, "Random seed");
    simulate->add_option("--threads", o.threads, "Worker threads (0: all cores)");
    simulate->add_option("--out", o.out, "CSV file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (*enumerate) return cmd_enumerate(o);
        if (*build_map) {
            if (!o.non_adaptive && id_opt->count() == 0) throw Failure{kUsage, "build-map needs --class-id or --non-adaptive"};
            return cmd_build_map(o);
        }
        if (*build_all) return cmd_build_all(o);
        if (*validate) return cmd_validate(o);
        if (*dmin) return cmd_dmin(o);
        if (*classify) return cmd_classify(o);
        if (*simulate) return cmd_simulate(o);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kUsage;
}
