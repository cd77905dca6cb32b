#include "bmround/body_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bmr {

namespace {

using nlohmann::json;

ValidationError bad_input(const std::string& msg) {
    return ValidationError(ValidationError::Kind::bad_input, msg);
}

SymmetricConvexBody body_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
        throw bad_input("body: expected an object with a \"type\" string");
    }
    const std::string type = j.at("type").get<std::string>();
    if (type == "polygon") {
        if (!j.contains("vertices") || !j.at("vertices").is_array()) {
            throw bad_input("body: polygon needs a \"vertices\" array");
        }
        std::vector<Vec2> vertices;
        for (const auto& v : j.at("vertices")) {
            if (!v.is_array() || v.size() != 2 || !v.at(0).is_number() ||
                !v.at(1).is_number()) {
                throw bad_input("body: vertices must be [x, y] pairs");
            }
            vertices.push_back(Vec2{v.at(0).get<double>(), v.at(1).get<double>()});
        }
        return SymmetricConvexBody::polygon(vertices);
    }
    if (type == "radial") {
        if (!j.contains("samples") || !j.at("samples").is_array()) {
            throw bad_input("body: radial needs a \"samples\" array");
        }
        std::vector<double> samples;
        for (const auto& v : j.at("samples")) {
            if (!v.is_number()) throw bad_input("body: samples must be numbers");
            samples.push_back(v.get<double>());
        }
        return SymmetricConvexBody::radial(samples);
    }
    if (type == "lp") {
        if (!j.contains("p")) throw bad_input("body: lp needs \"p\"");
        const auto& p = j.at("p");
        if (p.is_string()) {
            if (p.get<std::string>() != "inf") {
                throw bad_input("body: lp \"p\" must be a number or \"inf\"");
            }
            return SymmetricConvexBody::lp_ball_inf();
        }
        if (!p.is_number()) {
            throw bad_input("body: lp \"p\" must be a number or \"inf\"");
        }
        return SymmetricConvexBody::lp_ball(p.get<double>());
    }
    throw bad_input("body: unknown type '" + type + "'");
}

json body_to_json_obj(const SymmetricConvexBody& body) {
    json j;
    if (body.kind() == BodyKind::polygon) {
        j["type"] = "polygon";
        json verts = json::array();
        for (const Vec2& v : body.full_ring()) {
            verts.push_back(json::array({v.x, v.y}));
        }
        j["vertices"] = std::move(verts);
    } else {
        j["type"] = "radial";
        j["samples"] = body.radial_samples();
    }
    return j;
}

Rect rect_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4) {
        throw bad_input("field: \"rect\" must be [x0, y0, x1, y1]");
    }
    Rect r;
    r.x0 = j.at(0).get<double>();
    r.y0 = j.at(1).get<double>();
    r.x1 = j.at(2).get<double>();
    r.y1 = j.at(3).get<double>();
    return r;
}

}  // namespace

SymmetricConvexBody parse_body_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw bad_input(std::string("body: invalid JSON: ") + e.what());
    }
    return body_from_json(j);
}

std::string body_to_json(const SymmetricConvexBody& body) {
    // nlohmann serializes doubles round-trip exact (shortest representation).
    return body_to_json_obj(body).dump();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw bad_input("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SymmetricConvexBody load_body_file(const std::string& path) {
    return parse_body_json(read_text_file(path));
}

NormField parse_field_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw bad_input(std::string("field: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw bad_input("field: expected an object");
    Rect rect;  // defaults to the unit square
    if (j.contains("rect")) rect = rect_from_json(j.at("rect"));
    if (j.contains("constant")) {
        auto body = std::make_shared<const SymmetricConvexBody>(
            body_from_json(j.at("constant")));
        return NormField::constant(std::move(body), rect);
    }
    if (!j.contains("nx") || !j.contains("ny") || !j.contains("cells")) {
        throw bad_input("field: need \"constant\" or \"nx\"/\"ny\"/\"cells\"");
    }
    const int nx = j.at("nx").get<int>();
    const int ny = j.at("ny").get<int>();
    if (nx < 1 || ny < 1) throw bad_input("field: nx and ny must be >= 1");
    if (!j.at("cells").is_array() ||
        j.at("cells").size() != static_cast<std::size_t>(nx) * ny) {
        throw bad_input("field: \"cells\" must hold nx*ny bodies");
    }
    std::vector<std::shared_ptr<const SymmetricConvexBody>> cells;
    cells.reserve(j.at("cells").size());
    for (const auto& c : j.at("cells")) {
        cells.push_back(
            std::make_shared<const SymmetricConvexBody>(body_from_json(c)));
    }
    return NormField(rect, nx, ny, std::move(cells));
}

NormField load_field_file(const std::string& path) {
    return parse_field_json(read_text_file(path));
}

}  // namespace bmr
