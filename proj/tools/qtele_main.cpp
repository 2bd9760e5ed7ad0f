#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qtele/qtele.h"

namespace {

using nlohmann::json;

// Configuration or usage problems exit with code 2; library rejections
// (invalid physics parameters, failed evaluations) exit with code 3; a
// verify run that completes with failing suites exits with code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

json default_config() {
    qtele_classical_params c;
    qtele_classical_params_init(&c);
    qtele_quantum_params q;
    qtele_quantum_params_init(&q);
    qtele_sweep_spec s;
    qtele_sweep_spec_init(&s);
    qtele_verify_options v;
    qtele_verify_options_init(&v);

    json j;
    j["classical"] = {{"eta", c.eta},
                      {"lambda_plus", c.lambda_plus},
                      {"lambda_minus", c.lambda_minus},
                      {"receiver_vplus", c.receiver_vplus},
                      {"receiver_vminus", c.receiver_vminus},
                      {"input_noise_plus", c.input_noise_plus},
                      {"input_noise_minus", c.input_noise_minus},
                      {"input_signal_plus", c.input_signal_plus},
                      {"input_signal_minus", c.input_signal_minus}};
    j["quantum"] = {{"v_sqz", q.v_sqz},
                    {"lambda_plus", q.lambda_plus},
                    {"lambda_minus", q.lambda_minus},
                    {"eta_c", q.eta_c},
                    {"eta_d", q.eta_d},
                    {"eta_e", q.eta_e},
                    {"input_noise_plus", q.input_noise_plus},
                    {"input_noise_minus", q.input_noise_minus},
                    {"input_signal_plus", q.input_signal_plus},
                    {"input_signal_minus", q.input_signal_minus},
                    {"use_ancilla_noise", false},
                    {"ancilla_a_plus", q.ancilla_a_plus},
                    {"ancilla_a_minus", q.ancilla_a_minus},
                    {"ancilla_b_plus", q.ancilla_b_plus},
                    {"ancilla_b_minus", q.ancilla_b_minus}};
    j["sweep"] = {{"parameter", "gain"}, {"lo", s.lo}, {"hi", s.hi}, {"points", s.points}};
    j["quantum_tv"] = {{"v_sqz_values", json::array({1.0, 0.5, 0.1})}};
    j["operating_points"] = {{"lo", 0.05}, {"hi", 3.0}};
    j["verify"] = {{"tol_oracle", v.tol_oracle},
                   {"tol_identity", v.tol_identity},
                   {"tol_commutator", v.tol_commutator},
                   {"tol_classical_limit", v.tol_classical_limit},
                   {"tol_quadrature", v.tol_quadrature},
                   {"tol_operating_points", v.tol_operating_points},
                   {"seed", v.seed},
                   {"sequences", v.sequences}};
    return j;
}

bool types_compatible(const json& existing, const json& incoming) {
    if (existing.is_number() && incoming.is_number()) return true;
    if (existing.is_boolean() && incoming.is_boolean()) return true;
    if (existing.is_string() && incoming.is_string()) return true;
    if (existing.is_array() && incoming.is_array()) return true;
    return false;
}

void merge_config(json& base, const json& incoming, const std::string& prefix) {
    if (!incoming.is_object()) {
        throw UsageError("config section '" + (prefix.empty() ? "<root>" : prefix) +
                         "' must be a JSON object");
    }
    for (const auto& item : incoming.items()) {
        const std::string path = prefix.empty() ? item.key() : prefix + "." + item.key();
        if (!base.contains(item.key())) throw UsageError("unknown config key: " + path);
        json& slot = base[item.key()];
        if (slot.is_object()) {
            merge_config(slot, item.value(), path);
        } else {
            if (!types_compatible(slot, item.value())) {
                throw UsageError("config key '" + path + "' has the wrong type");
            }
            slot = item.value();
        }
    }
}

void apply_set(json& config, const std::string& item) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw UsageError("--set expects key.path=value, got '" + item + "'");
    }
    const std::string path = item.substr(0, eq);
    const std::string value_text = item.substr(eq + 1);

    json* node = &config;
    std::size_t start = 0;
    std::string leaf;
    while (true) {
        const auto dot = path.find('.', start);
        const std::string segment = path.substr(start, dot - start);
        if (!node->contains(segment)) throw UsageError("unknown config key: " + path);
        if (dot == std::string::npos) {
            leaf = segment;
            break;
        }
        node = &(*node)[segment];
        if (!node->is_object()) throw UsageError("config key '" + path + "' has no sub-keys");
        start = dot + 1;
    }

    json parsed = json::parse(value_text, nullptr, false);
    if (parsed.is_discarded()) parsed = json(value_text);
    json& slot = (*node)[leaf];
    if (slot.is_object()) throw UsageError("config key '" + path + "' is a section");
    if (!types_compatible(slot, parsed)) {
        throw UsageError("config key '" + path + "' has the wrong type");
    }
    slot = parsed;
}

qtele_classical_params classical_params_from(const json& c) {
    qtele_classical_params p;
    qtele_classical_params_init(&p);
    p.eta = c.at("eta").get<double>();
    p.lambda_plus = c.at("lambda_plus").get<double>();
    p.lambda_minus = c.at("lambda_minus").get<double>();
    p.receiver_vplus = c.at("receiver_vplus").get<double>();
    p.receiver_vminus = c.at("receiver_vminus").get<double>();
    p.input_noise_plus = c.at("input_noise_plus").get<double>();
    p.input_noise_minus = c.at("input_noise_minus").get<double>();
    p.input_signal_plus = c.at("input_signal_plus").get<double>();
    p.input_signal_minus = c.at("input_signal_minus").get<double>();
    return p;
}

qtele_quantum_params quantum_params_from(const json& q) {
    qtele_quantum_params p;
    qtele_quantum_params_init(&p);
    p.v_sqz = q.at("v_sqz").get<double>();
    p.lambda_plus = q.at("lambda_plus").get<double>();
    p.lambda_minus = q.at("lambda_minus").get<double>();
    p.eta_c = q.at("eta_c").get<double>();
    p.eta_d = q.at("eta_d").get<double>();
    p.eta_e = q.at("eta_e").get<double>();
    p.input_noise_plus = q.at("input_noise_plus").get<double>();
    p.input_noise_minus = q.at("input_noise_minus").get<double>();
    p.input_signal_plus = q.at("input_signal_plus").get<double>();
    p.input_signal_minus = q.at("input_signal_minus").get<double>();
    p.use_ancilla_noise = q.at("use_ancilla_noise").get<bool>() ? 1 : 0;
    p.ancilla_a_plus = q.at("ancilla_a_plus").get<double>();
    p.ancilla_a_minus = q.at("ancilla_a_minus").get<double>();
    p.ancilla_b_plus = q.at("ancilla_b_plus").get<double>();
    p.ancilla_b_minus = q.at("ancilla_b_minus").get<double>();
    return p;
}

qtele_sweep_spec sweep_from(const json& s, qtele_sweep_parameter* parameter_out) {
    qtele_sweep_spec spec;
    qtele_sweep_spec_init(&spec);
    const std::string name = s.at("parameter").get<std::string>();
    if (name == "gain") {
        spec.parameter = QTELE_SWEEP_GAIN;
    } else if (name == "v_sqz") {
        spec.parameter = QTELE_SWEEP_V_SQZ;
    } else if (name == "eta_c") {
        spec.parameter = QTELE_SWEEP_ETA_C;
    } else if (name == "eta_d") {
        spec.parameter = QTELE_SWEEP_ETA_D;
    } else if (name == "eta_e") {
        spec.parameter = QTELE_SWEEP_ETA_E;
    } else {
        throw UsageError("sweep.parameter must be one of gain, v_sqz, eta_c, eta_d, eta_e");
    }
    spec.lo = s.at("lo").get<double>();
    spec.hi = s.at("hi").get<double>();
    spec.points = s.at("points").get<std::size_t>();
    if (parameter_out) *parameter_out = spec.parameter;
    return spec;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw UsageError("cannot open output file: " + out_path);
    file << text;
}

int fail_lib() {
    std::fprintf(stderr, "error: %s\n", qtele_last_error());
    return 3;
}

const char* kMetricColumns[] = {"t_plus",   "t_minus",  "t_q",       "vcv_plus", "vcv_minus",
                                "v_q",      "vout_plus", "vout_minus", "fidelity"};

void append_metrics_csv(std::string& csv, const qtele_tv_point& tv) {
    csv += fmt_double(tv.t_plus) + "," + fmt_double(tv.t_minus) + "," + fmt_double(tv.t_q) +
           "," + fmt_double(tv.vcv_plus) + "," + fmt_double(tv.vcv_minus) + "," +
           fmt_double(tv.v_q) + "," + fmt_double(tv.vout_plus) + "," +
           fmt_double(tv.vout_minus) + ",";
    if (tv.has_fidelity) csv += fmt_double(tv.fidelity);
    csv += "\n";
}

void append_metrics_json(json& row, const qtele_tv_point& tv) {
    row["t_plus"] = tv.t_plus;
    row["t_minus"] = tv.t_minus;
    row["t_q"] = tv.t_q;
    row["vcv_plus"] = tv.vcv_plus;
    row["vcv_minus"] = tv.vcv_minus;
    row["v_q"] = tv.v_q;
    row["vout_plus"] = tv.vout_plus;
    row["vout_minus"] = tv.vout_minus;
    row["fidelity"] = tv.has_fidelity ? json(tv.fidelity) : json(nullptr);
}

int run_classical_tv(const json& config, const std::string& format,
                     const std::string& out_path) {
    const qtele_classical_params base = classical_params_from(config.at("classical"));
    qtele_sweep_parameter parameter = QTELE_SWEEP_GAIN;
    const qtele_sweep_spec spec = sweep_from(config.at("sweep"), &parameter);
    if (parameter != QTELE_SWEEP_GAIN) {
        throw UsageError("classical-tv only sweeps the gain parameter");
    }

    qtele_tv_table* table = nullptr;
    if (qtele_sweep_classical(&base, &spec, &table) != QTELE_OK) return fail_lib();

    std::string text;
    json rows = json::array();
    if (format == "csv") {
        text = "lambda";
        for (const char* col : kMetricColumns) text += std::string(",") + col;
        text += "\n";
    }
    const size_t n = qtele_tv_table_size(table);
    for (size_t i = 0; i < n; ++i) {
        double swept = 0.0;
        qtele_tv_point tv;
        if (qtele_tv_table_row(table, i, &swept, &tv) != QTELE_OK) {
            qtele_tv_table_free(table);
            return fail_lib();
        }
        if (format == "csv") {
            text += fmt_double(swept) + ",";
            append_metrics_csv(text, tv);
        } else {
            json row;
            row["lambda"] = swept;
            append_metrics_json(row, tv);
            rows.push_back(row);
        }
    }
    qtele_tv_table_free(table);
    if (format == "json") text = rows.dump(2) + "\n";
    write_output(text, out_path);
    return 0;
}

int run_quantum_tv(const json& config, const std::string& format, const std::string& out_path) {
    const json& quantum_cfg = config.at("quantum");
    qtele_sweep_parameter parameter = QTELE_SWEEP_GAIN;
    const qtele_sweep_spec spec = sweep_from(config.at("sweep"), &parameter);

    std::vector<double> v_values;
    if (parameter == QTELE_SWEEP_V_SQZ) {
        v_values.push_back(quantum_cfg.at("v_sqz").get<double>());
    } else {
        v_values = config.at("quantum_tv").at("v_sqz_values").get<std::vector<double>>();
        if (v_values.empty()) throw UsageError("quantum_tv.v_sqz_values must be non-empty");
    }

    std::string text;
    json rows = json::array();
    if (format == "csv") {
        text = "v_sqz,eta_c,eta_d,eta_e,lambda";
        for (const char* col : kMetricColumns) text += std::string(",") + col;
        text += "\n";
    }

    for (double v : v_values) {
        qtele_quantum_params base = quantum_params_from(quantum_cfg);
        if (parameter != QTELE_SWEEP_V_SQZ) base.v_sqz = v;

        qtele_tv_table* table = nullptr;
        if (qtele_sweep_quantum(&base, &spec, &table) != QTELE_OK) return fail_lib();

        const size_t n = qtele_tv_table_size(table);
        for (size_t i = 0; i < n; ++i) {
            double swept = 0.0;
            qtele_tv_point tv;
            if (qtele_tv_table_row(table, i, &swept, &tv) != QTELE_OK) {
                qtele_tv_table_free(table);
                return fail_lib();
            }
            double row_v = base.v_sqz;
            double row_ec = base.eta_c;
            double row_ed = base.eta_d;
            double row_ee = base.eta_e;
            double row_lambda = base.lambda_plus;
            switch (parameter) {
                case QTELE_SWEEP_GAIN:
                    row_lambda = swept;
                    break;
                case QTELE_SWEEP_V_SQZ:
                    row_v = swept;
                    break;
                case QTELE_SWEEP_ETA_C:
                    row_ec = swept;
                    break;
                case QTELE_SWEEP_ETA_D:
                    row_ed = swept;
                    break;
                case QTELE_SWEEP_ETA_E:
                    row_ee = swept;
                    break;
            }
            if (format == "csv") {
                text += fmt_double(row_v) + "," + fmt_double(row_ec) + "," +
                        fmt_double(row_ed) + "," + fmt_double(row_ee) + "," +
                        fmt_double(row_lambda) + ",";
                append_metrics_csv(text, tv);
            } else {
                json row;
                row["v_sqz"] = row_v;
                row["eta_c"] = row_ec;
                row["eta_d"] = row_ed;
                row["eta_e"] = row_ee;
                row["lambda"] = row_lambda;
                append_metrics_json(row, tv);
                rows.push_back(row);
            }
        }
        qtele_tv_table_free(table);
    }

    if (format == "json") text = rows.dump(2) + "\n";
    write_output(text, out_path);
    return 0;
}

int run_operating_points(const json& config, const std::string& format,
                         const std::string& out_path) {
    const qtele_quantum_params params = quantum_params_from(config.at("quantum"));
    const double lo = config.at("operating_points").at("lo").get<double>();
    const double hi = config.at("operating_points").at("hi").get<double>();

    qtele_operating_points op;
    if (qtele_find_operating_points(&params, lo, hi, &op) != QTELE_OK) return fail_lib();

    json j;
    j["lambda_g_formula"] = op.lambda_g_formula;
    j["lambda_eta_formula"] = op.lambda_eta_formula;
    j["formulas_bounded"] = op.formulas_bounded != 0;
    j["lambda_tq_max"] = op.lambda_tq_max;
    j["tq_max"] = op.tq_max;
    j["lambda_vq_min"] = op.lambda_vq_min;
    j["vq_min"] = op.vq_min;
    j["tq_unimodal"] = op.tq_unimodal != 0;
    j["vq_unimodal"] = op.vq_unimodal != 0;
    j["tq_interior"] = op.tq_interior != 0;
    j["vq_interior"] = op.vq_interior != 0;
    j["amplifier_residual"] = op.amplifier_residual;
    j["attenuator_residual"] = op.attenuator_residual;
    j["unity_residual"] = op.unity_residual;

    std::string text;
    if (format == "json") {
        text = j.dump(2) + "\n";
    } else {
        text = "quantity,value\n";
        for (const auto& item : j.items()) {
            text += item.key() + ",";
            if (item.value().is_boolean()) {
                text += item.value().get<bool>() ? "true" : "false";
            } else {
                text += fmt_double(item.value().get<double>());
            }
            text += "\n";
        }
    }
    write_output(text, out_path);
    return 0;
}

int run_verify(const json& config, const std::string& format, const std::string& out_path) {
    const json& v = config.at("verify");
    qtele_verify_options options;
    qtele_verify_options_init(&options);
    options.tol_oracle = v.at("tol_oracle").get<double>();
    options.tol_identity = v.at("tol_identity").get<double>();
    options.tol_commutator = v.at("tol_commutator").get<double>();
    options.tol_classical_limit = v.at("tol_classical_limit").get<double>();
    options.tol_quadrature = v.at("tol_quadrature").get<double>();
    options.tol_operating_points = v.at("tol_operating_points").get<double>();
    options.seed = v.at("seed").get<std::uint64_t>();
    options.sequences = v.at("sequences").get<std::size_t>();

    qtele_verify_report* report = nullptr;
    if (qtele_verify_run(&options, &report) != QTELE_OK) return fail_lib();

    std::string text;
    json suites = json::array();
    const size_t n = qtele_verify_report_size(report);
    for (size_t i = 0; i < n; ++i) {
        const char* name = nullptr;
        const char* detail = nullptr;
        int passed = 0;
        if (qtele_verify_report_suite(report, i, &name, &passed, &detail) != QTELE_OK) {
            qtele_verify_report_free(report);
            return fail_lib();
        }
        if (format == "json") {
            suites.push_back({{"name", name}, {"passed", passed != 0}, {"detail", detail}});
        } else {
            char line[512];
            std::snprintf(line, sizeof line, "%-4s %-28s %s\n", passed ? "PASS" : "FAIL", name,
                          detail);
            text += line;
        }
    }
    const bool ok = qtele_verify_report_all_passed(report) != 0;
    qtele_verify_report_free(report);

    if (format == "json") {
        text = json{{"suites", suites}, {"all_passed", ok}}.dump(2) + "\n";
    }
    write_output(text, out_path);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Teleportation benchmark tool: T-V sweeps, operating points, self checks"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::vector<std::string> sets;
    bool dump_config = false;
    app.add_option("--config", config_path, "JSON config file merged over the defaults");
    app.add_option("--set", sets, "override one config key, e.g. --set quantum.v_sqz=0.25");
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "write output to a file instead of stdout");
    app.add_flag("--dump-config", dump_config, "print the merged config and exit");

    auto* classical = app.add_subcommand(
        "classical-tv", "gain sweep of the splitter-and-feedforward channel");
    auto* quantum = app.add_subcommand(
        "quantum-tv", "sweeps of the entangled channel, one block per squeezing value");
    auto* operating = app.add_subcommand(
        "operating-points", "special gains of the lossless entangled channel");
    auto* verify = app.add_subcommand("verify", "run the library self-check suites");
    for (CLI::App* sub : {classical, quantum, operating, verify}) sub->fallthrough();

    double flag_eta = 0.0;
    auto* opt_eta = classical->add_option("--eta", flag_eta, "splitter transmission");

    double flag_v_sqz = 0.0;
    double flag_eta_c = 0.0, flag_eta_d = 0.0, flag_eta_e = 0.0;
    auto* opt_v_sqz =
        quantum->add_option("--v-sqz", flag_v_sqz, "single squeezing value for the sweep");
    auto* opt_eta_c = quantum->add_option("--eta-c", flag_eta_c, "sender-side transmission");
    auto* opt_eta_d = quantum->add_option("--eta-d", flag_eta_d, "receiver-side transmission");
    auto* opt_eta_e = quantum->add_option("--eta-e", flag_eta_e, "detection efficiency");

    double flag_lo = 0.0, flag_hi = 0.0;
    std::size_t flag_points = 0;
    std::vector<CLI::Option*> opt_lo_list, opt_hi_list, opt_points_list;
    for (CLI::App* sub : {classical, quantum}) {
        opt_lo_list.push_back(sub->add_option("--lo", flag_lo, "sweep lower bound"));
        opt_hi_list.push_back(sub->add_option("--hi", flag_hi, "sweep upper bound"));
        opt_points_list.push_back(sub->add_option("--points", flag_points, "grid size"));
    }
    auto* opt_op_lo = operating->add_option("--lo", flag_lo, "search lower bound");
    auto* opt_op_hi = operating->add_option("--hi", flag_hi, "search upper bound");
    auto* opt_op_v = operating->add_option("--v-sqz", flag_v_sqz, "squeezing value");

    std::uint64_t flag_seed = 0;
    std::size_t flag_sequences = 0;
    auto* opt_seed = verify->add_option("--seed", flag_seed, "random-sequence seed");
    auto* opt_sequences =
        verify->add_option("--sequences", flag_sequences, "random circuits to run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        json config = default_config();
        if (!config_path.empty()) {
            std::ifstream file(config_path);
            if (!file) throw UsageError("cannot open config file: " + config_path);
            json incoming = json::parse(file, nullptr, false);
            if (incoming.is_discarded()) {
                throw UsageError("config file is not valid JSON: " + config_path);
            }
            merge_config(config, incoming, "");
        }
        for (const std::string& item : sets) apply_set(config, item);

        if (opt_eta->count() > 0) config["classical"]["eta"] = flag_eta;
        if (opt_v_sqz->count() > 0 || opt_op_v->count() > 0) {
            config["quantum"]["v_sqz"] = flag_v_sqz;
            config["quantum_tv"]["v_sqz_values"] = json::array({flag_v_sqz});
        }
        if (opt_eta_c->count() > 0) config["quantum"]["eta_c"] = flag_eta_c;
        if (opt_eta_d->count() > 0) config["quantum"]["eta_d"] = flag_eta_d;
        if (opt_eta_e->count() > 0) config["quantum"]["eta_e"] = flag_eta_e;
        for (const CLI::Option* opt : opt_lo_list)
            if (opt->count() > 0) config["sweep"]["lo"] = flag_lo;
        for (const CLI::Option* opt : opt_hi_list)
            if (opt->count() > 0) config["sweep"]["hi"] = flag_hi;
        for (const CLI::Option* opt : opt_points_list)
            if (opt->count() > 0) config["sweep"]["points"] = flag_points;
        if (opt_op_lo->count() > 0) config["operating_points"]["lo"] = flag_lo;
        if (opt_op_hi->count() > 0) config["operating_points"]["hi"] = flag_hi;
        if (opt_seed->count() > 0) config["verify"]["seed"] = flag_seed;
        if (opt_sequences->count() > 0) config["verify"]["sequences"] = flag_sequences;

        if (dump_config) {
            write_output(config.dump(2) + "\n", out_path);
            return 0;
        }

        if (classical->parsed()) return run_classical_tv(config, format, out_path);
        if (quantum->parsed()) return run_quantum_tv(config, format, out_path);
        if (operating->parsed()) return run_operating_points(config, format, out_path);
        return run_verify(config, format, out_path);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const json::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
