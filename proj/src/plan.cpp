#include "degseq/plan.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace degseq {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw plan_error("unknown key \"" + it.key() + "\" in " + where);
}

PRule parse_p_rule(const json& obj) {
    if (!obj.is_object()) throw plan_error("p_rule must be an object");
    require_keys(obj, {"type", "c", "beta", "values"}, "p_rule");
    if (!obj.contains("type")) throw plan_error("p_rule needs a type");
    const std::string type = obj.at("type").get<std::string>();
    PRule rule;
    if (type == "power_law") {
        rule.kind = PRule::Kind::PowerLaw;
        rule.c = obj.value("c", 1.0);
        if (!obj.contains("beta")) throw plan_error("power_law rule needs beta");
        rule.beta = obj.at("beta").get<double>();
    } else if (type == "log_over_n") {
        rule.kind = PRule::Kind::LogOverN;
        rule.c = obj.value("c", 1.0);
        if (obj.contains("beta")) throw plan_error("log_over_n rule does not take beta");
    } else if (type == "fixed") {
        rule.kind = PRule::Kind::Fixed;
        if (!obj.contains("values")) throw plan_error("fixed rule needs values");
        rule.fixed = obj.at("values").get<std::vector<double>>();
        if (obj.contains("c") || obj.contains("beta"))
            throw plan_error("fixed rule does not take c or beta");
    } else {
        throw plan_error("unknown p_rule type: " + type);
    }
    return rule;
}

EventSpec parse_event(const json& ev) {
    EventSpec spec;
    if (ev.is_string()) {
        const std::string name = ev.get<std::string>();
        if (name == "fb_pair_collision") {
            spec.kind = EventSpec::Kind::FbPairCollision;
        } else if (name == "fb_all_collision") {
            spec.kind = EventSpec::Kind::FbAllCollision;
        } else if (name == "odd_sum") {
            spec.kind = EventSpec::Kind::OddSum;
        } else {
            throw plan_error("unknown event name: " + name);
        }
        return spec;
    }
    if (!ev.is_object()) throw plan_error("event must be a string or object");
    require_keys(ev, {"type", "graph", "op", "value"}, "event");
    const std::string type = ev.at("type").get<std::string>();
    if (type == "fb_pair_collision") {
        spec.kind = EventSpec::Kind::FbPairCollision;
    } else if (type == "fb_all_collision") {
        spec.kind = EventSpec::Kind::FbAllCollision;
    } else if (type == "odd_sum") {
        spec.kind = EventSpec::Kind::OddSum;
        spec.graph_index = ev.value("graph", 0);
    } else if (type == "sum_threshold") {
        spec.kind = EventSpec::Kind::SumThreshold;
        spec.graph_index = ev.value("graph", 0);
        if (!ev.contains("value")) throw plan_error("sum_threshold event needs value");
        spec.value = ev.at("value").get<std::int64_t>();
        const std::string op = ev.value("op", "ge");
        if (op == "ge")
            spec.cmp = EventSpec::Cmp::Ge;
        else if (op == "le")
            spec.cmp = EventSpec::Cmp::Le;
        else if (op == "eq")
            spec.cmp = EventSpec::Cmp::Eq;
        else
            throw plan_error("unknown sum_threshold op: " + op);
    } else {
        throw plan_error("unknown event type: " + type);
    }
    return spec;
}

}  // namespace

PlanFile parse_plan_text(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw plan_error(std::string("plan is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw plan_error("plan must be a JSON object");
    require_keys(root,
                 {"mode", "n_grid", "p_rule", "k", "event", "events", "replicates", "seed",
                  "models", "allow_outside_regime", "csv_out", "json_out"},
                 "plan");

    PlanFile out;
    try {
        out.mode = root.value("mode", std::string("decay"));
        if (out.mode != "decay" && out.mode != "collision_bound")
            throw plan_error("mode must be \"decay\" or \"collision_bound\"");

        if (!root.contains("n_grid")) throw plan_error("plan needs n_grid");
        out.plan.n_grid = root.at("n_grid").get<std::vector<int>>();
        if (!root.contains("p_rule")) throw plan_error("plan needs p_rule");
        out.plan.p_rule = parse_p_rule(root.at("p_rule"));
        out.plan.k = root.value("k", 1);

        if (root.contains("event") == root.contains("events"))
            throw plan_error("plan needs exactly one of \"event\" or \"events\"");
        if (root.contains("event")) {
            out.plan.events = {parse_event(root.at("event"))};
        } else {
            for (const auto& ev : root.at("events")) out.plan.events.push_back(parse_event(ev));
        }

        if (!root.contains("replicates")) throw plan_error("plan needs replicates");
        out.plan.replicates = root.at("replicates").get<std::int64_t>();
        if (!root.contains("seed")) throw plan_error("plan needs seed");
        out.plan.seed = root.at("seed").get<std::uint64_t>();

        if (!root.contains("models")) throw plan_error("plan needs models");
        for (const auto& tag : root.at("models"))
            out.plan.models.push_back(parse_model(tag.get<std::string>()));

        out.plan.allow_outside_regime = root.value("allow_outside_regime", false);
        if (!root.contains("csv_out")) throw plan_error("plan needs csv_out");
        out.csv_out = root.at("csv_out").get<std::string>();
        if (!root.contains("json_out")) throw plan_error("plan needs json_out");
        out.json_out = root.at("json_out").get<std::string>();
    } catch (const json::exception& e) {
        throw plan_error(std::string("plan field has the wrong type: ") + e.what());
    }

    try {
        out.plan.validate();
    } catch (const std::invalid_argument& e) {
        throw plan_error(e.what());
    }
    return out;
}

PlanFile load_plan_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open plan file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw io_error("error while reading plan file: " + path);
    return parse_plan_text(buf.str());
}

std::string report_summary_json(const PlanFile& plan_file, const DecayReport& report,
                                const CollisionBoundReport* collision) {
    json root;
    root["mode"] = plan_file.mode;
    root["p_rule"] = plan_file.plan.p_rule.describe();
    root["k"] = plan_file.plan.k;
    root["replicates"] = plan_file.plan.replicates;
    root["seed"] = plan_file.plan.seed;

    json fits = json::array();
    for (const auto& f : report.fits) {
        json item;
        item["model"] = model_name(f.model);
        item["event"] = f.event;
        item["cells_used"] = f.cells_used;
        item["degenerate"] = f.degenerate;
        item["valid"] = f.fit.valid;
        if (f.fit.valid) {
            item["slope"] = f.fit.slope;
            item["slope_se"] = f.fit.slope_se;
            item["intercept"] = f.fit.intercept;
            item["intercept_se"] = f.fit.intercept_se;
        }
        fits.push_back(item);
    }
    root["fits"] = fits;

    json gaps = json::array();
    for (const auto& g : report.gaps) {
        json item;
        item["model_a"] = model_name(g.model_a);
        item["model_b"] = model_name(g.model_b);
        item["event"] = g.event;
        item["valid"] = g.valid;
        if (g.valid) {
            item["gap"] = g.gap;
            item["joint_se"] = g.joint_se;
        }
        gaps.push_back(item);
    }
    root["slope_gaps"] = gaps;
    root["warnings"] = report.warnings;

    if (collision) {
        json rows = json::array();
        for (const auto& row : collision->rows) {
            json item;
            item["model"] = model_name(row.model);
            item["n"] = row.n;
            item["replicates"] = row.replicates;
            item["collision_hits"] = row.collision_hits;
            item["collision_phat"] = row.collision_phat;
            item["bound"] = row.bound;
            item["ratio"] = row.ratio;
            item["alphas"] = row.alphas;
            if (row.iso_phat) item["iso_phat"] = *row.iso_phat;
            rows.push_back(item);
        }
        root["collision_bound"] = rows;
    }
    return root.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open output file: " + path);
    out << contents;
    out.flush();
    if (!out) throw io_error("error while writing: " + path);
}

}  // namespace degseq
