// Command-line front end: exact classification of conjugacy limits of the
// positive diagonal Cartan subgroup of SL3, plus the numeric cross-checks.
//
// Exit codes: 0 success, 1 user error (bad input, singular matrix,
// unreachable pair), 2 internal invariant violation (e.g. the two
// classification pipelines disagree).

#include "cartanlim/expr.hpp"
#include "cartanlim/generator.hpp"
#include "cartanlim/limits.hpp"
#include "cartanlim/numeric.hpp"
#include "cartanlim/report.hpp"
#include "cartanlim/sl2.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace cartanlim;

constexpr int kExitOk = 0;
constexpr int kExitUserError = 1;
constexpr int kExitInternal = 2;

int run_classify(const std::string& spec, const std::string& batch_file) {
    std::vector<std::string> inputs;
    if (!batch_file.empty()) {
        std::ifstream in(batch_file);
        if (!in) {
            std::cerr << "cannot open batch file: " << batch_file << "\n";
            return kExitUserError;
        }
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) inputs.push_back(line);
    } else {
        inputs.push_back(spec);
    }

    std::vector<std::string> outputs(inputs.size());
    std::vector<std::string> errors(inputs.size());

    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            try {
                const Json j = classify_report(matrix_from_json(Json::parse(inputs[i])));
                outputs[i] = j.dump();
                if (!j.at("agree").get<bool>())
                    errors[i] = "internal: triangle and oracle pipelines disagree";
            } catch (const InternalError& e) {
                errors[i] = std::string("internal: ") + e.what();
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };

    const std::size_t n = inputs.size();
    if (n > 1) {
        const std::size_t nthreads = std::min<std::size_t>(std::thread::hardware_concurrency(), n);
        std::vector<std::thread> pool;
        for (std::size_t k = 0; k < nthreads; ++k)
            pool.emplace_back(work, n * k / nthreads, n * (k + 1) / nthreads);
        for (auto& th : pool) th.join();
    } else {
        work(0, n);
    }

    int rc = kExitOk;
    for (std::size_t i = 0; i < n; ++i) {
        if (!outputs[i].empty()) std::cout << outputs[i] << "\n";
        if (!errors[i].empty()) {
            std::cerr << "line " << (i + 1) << ": " << errors[i] << "\n";
            const bool internal = errors[i].rfind("internal:", 0) == 0;
            rc = std::max(rc, internal ? kExitInternal : kExitUserError);
        }
    }
    return rc;
}

int run_subalgebra(const std::string& spec) {
    const Json j = Json::parse(spec);
    if (!j.is_object() || !j.contains("X") || !j.contains("Y"))
        throw std::invalid_argument("input must be an object with 3x3 matrices under \"X\", \"Y\"");
    auto read = [&](const char* key) {
        Mat3<Rational> m;
        const Json& rows = j.at(key);
        if (!rows.is_array() || rows.size() != 3)
            throw std::invalid_argument(std::string(key) + " must be an array of 3 rows");
        for (std::size_t r = 0; r < 3; ++r) {
            if (!rows.at(r).is_array() || rows.at(r).size() != 3)
                throw std::invalid_argument("each row must have 3 entries");
            for (std::size_t c = 0; c < 3; ++c) {
                const HReal v = parse_hreal(rows.at(r).at(c).get<std::string>());
                if (!v.is_finite() || !(v - HReal(v.shadow())).is_zero())
                    throw std::invalid_argument("subalgebra entries must be rational constants");
                m.at(r, c) = v.shadow();
            }
        }
        return m;
    };
    const ClassLabel c = classify_abelian_subalgebra(Plane2<Rational>(read("X"), read("Y")));
    Json out;
    out["class"] = to_string(c);
    out["canonical_group_form"] = canonical_group_form(c);
    std::cout << out.dump() << "\n";
    return kExitOk;
}

int run_digraph(const std::string& from, const std::string& to, bool proper) {
    const ClassLabel a = class_label_from_string(from), b = class_label_from_string(to);
    const auto path = Digraph::path(a, b, proper);
    if (!path) {
        std::cerr << "unreachable: no directed path from " << from << " to " << to << "\n";
        return kExitUserError;
    }
    Json out;
    Json steps = Json::array();
    for (ClassLabel v : *path) steps.push_back(to_string(v));
    out["path"] = steps;
    const OneParamPath fam = one_param_path(a, b);
    out["conjugator_family"] = fam.formula;
    std::cout << out.dump() << "\n";
    return kExitOk;
}

int run_sl2(const std::string& delta_expr) {
    const HReal delta = parse_hreal(delta_expr);
    Json out;
    out["delta"] = to_string(delta);
    out["class"] = to_string(classify_sl2(delta));
    std::cout << out.dump() << "\n";
    return kExitOk;
}

int run_sequence(const std::string& spec, const std::string& schedule_arg) {
    const Mat3<HReal> p = matrix_from_json(Json::parse(spec));
    std::vector<long long> schedule;
    std::stringstream ss(schedule_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) schedule.push_back(std::stoll(tok));
    const RealMatrixSeq seq{p};
    const LimitDetection det = detect_limit_plane(seq, schedule);

    const FullClassification exact = full_classify(p);
    Json out;
    out["numeric_class"] = to_string(det.label);
    out["exact_class"] = to_string(exact.triangle_class);
    out["last_cauchy_step"] = det.last_step;
    Json pl = Json::array();
    for (double v : det.plucker) pl.push_back(v);
    out["plucker"] = pl;
    std::cout << out.dump() << "\n";
    return det.label == exact.triangle_class ? kExitOk : kExitInternal;
}

int run_config(const std::string& label) {
    const ClassLabel c = class_label_from_string(label);
    const ConfigClass cfg = characteristic_configuration(c);
    Json out;
    out["class"] = to_string(c);
    out["label"] = to_string(cfg.label);
    out["points"] = cfg.points;
    out["lines"] = cfg.lines;
    out["description"] = cfg.description;
    out["maximal_description"] = cfg.maximal_description;
    out["dual_class"] = to_string(duality(c));
    std::cout << out.dump() << "\n";
    return kExitOk;
}

int run_selftest(std::uint64_t seed, std::size_t per_row) {
    InstanceGenerator gen(seed);
    std::size_t total = 0, agreed = 0, matched = 0;
    for (ClassLabel row : kAllClasses) {
        for (std::size_t i = 0; i < per_row; ++i) {
            const RowInstance inst = gen.make(row);
            const FullClassification full = full_classify(inst.matrix);
            ++total;
            if (full.agree) ++agreed;
            if (full.triangle_class == row && full.oracle_class == row) ++matched;
        }
    }
    Json out;
    out["seed"] = seed;
    out["instances"] = total;
    out["pipelines_agree"] = agreed;
    out["row_matches"] = matched;
    std::cout << out.dump() << "\n";
    if (agreed != total) {
        std::cerr << "internal: pipeline disagreement in self-test\n";
        return kExitInternal;
    }
    if (matched != total) {
        std::cerr << "internal: row mismatch in self-test\n";
        return kExitInternal;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact classification of conjugacy limits of the diagonal Cartan subgroup of SL3"};
    app.require_subcommand(1);

    std::string matrix_spec, batch_file, basis_spec, from, to, delta_expr, schedule = "100,10000,1000000";
    std::string config_label;
    bool proper = false;
    std::uint64_t seed = 1;
    std::size_t per_row = 20;

    auto* classify = app.add_subcommand("classify", "classify a conjugating matrix (both pipelines)");
    classify->add_option("matrix", matrix_spec, "JSON {\"P\": [[expr x3] x3]} with entries in the t-expression grammar");
    classify->add_option("--batch", batch_file, "file with one JSON matrix per line; processed in parallel");

    auto* subalgebra = app.add_subcommand("subalgebra", "classify a 2-dimensional abelian subalgebra");
    subalgebra->add_option("basis", basis_spec, "JSON {\"X\": [[rat x3] x3], \"Y\": ...}")->required();

    auto* digraph = app.add_subcommand("digraph", "directed path between limit classes");
    digraph->add_option("from", from)->required();
    digraph->add_option("to", to)->required();
    digraph->add_flag("--proper", proper, "require a nonempty path");

    auto* sl2 = app.add_subcommand("sl2", "classify the SL2 family for a given delta");
    sl2->add_option("delta", delta_expr)->required();

    auto* sequence = app.add_subcommand("sequence", "numeric limit detection at t = 1/n");
    sequence->add_option("matrix", matrix_spec)->required();
    sequence->add_option("--schedule", schedule, "comma-separated increasing n values");

    auto* config = app.add_subcommand("config", "characteristic configuration of a limit class");
    config->add_option("class", config_label)->required();

    auto* selftest = app.add_subcommand("selftest", "randomized agreement sweep of both pipelines");
    selftest->add_option("--seed", seed);
    selftest->add_option("--count", per_row, "instances per table row");

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify->parsed()) return run_classify(matrix_spec, batch_file);
        if (subalgebra->parsed()) return run_subalgebra(basis_spec);
        if (digraph->parsed()) return run_digraph(from, to, proper);
        if (sl2->parsed()) return run_sl2(delta_expr);
        if (sequence->parsed()) return run_sequence(matrix_spec, schedule);
        if (config->parsed()) return run_config(config_label);
        if (selftest->parsed()) return run_selftest(seed, per_row);
    } catch (const InternalError& e) {
        std::cerr << "internal: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUserError;
    }
    return kExitUserError;
}
