#include "sqz/json_writer.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "sqz/csv.hpp"

namespace sqz::jsonw {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

} // namespace

void Writer::comma_for_value() {
    if (stack_.empty()) return;
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (stack_.back() == 'a') {
        if (!first_.back()) out_ += ',';
        first_.back() = false;
        out_ += '\n';
        indent();
    }
}

void Writer::indent() {
    for (std::size_t i = 0; i < stack_.size(); ++i) out_ += "  ";
}

Writer& Writer::begin_object() {
    comma_for_value();
    out_ += '{';
    stack_.push_back('o');
    first_.push_back(true);
    return *this;
}

Writer& Writer::end_object() {
    if (stack_.empty() || stack_.back() != 'o')
        throw std::logic_error("mismatched end_object");
    const bool empty = first_.back();
    stack_.pop_back();
    first_.pop_back();
    if (!empty) {
        out_ += '\n';
        indent();
    }
    out_ += '}';
    return *this;
}

Writer& Writer::begin_array() {
    comma_for_value();
    out_ += '[';
    stack_.push_back('a');
    first_.push_back(true);
    return *this;
}

Writer& Writer::end_array() {
    if (stack_.empty() || stack_.back() != 'a')
        throw std::logic_error("mismatched end_array");
    const bool empty = first_.back();
    stack_.pop_back();
    first_.pop_back();
    if (!empty) {
        out_ += '\n';
        indent();
    }
    out_ += ']';
    return *this;
}

Writer& Writer::key(const std::string& name) {
    if (stack_.empty() || stack_.back() != 'o')
        throw std::logic_error("key outside object");
    if (!first_.back()) out_ += ',';
    first_.back() = false;
    out_ += '\n';
    indent();
    out_ += '"';
    out_ += escape(name);
    out_ += "\": ";
    pending_key_ = true;
    return *this;
}

Writer& Writer::value(double v) {
    comma_for_value();
    if (std::isfinite(v)) {
        out_ += csv::format_double(v);
    } else if (std::isnan(v)) {
        out_ += "\"nan\"";
    } else {
        out_ += v > 0 ? "\"inf\"" : "\"-inf\"";
    }
    return *this;
}

Writer& Writer::value(int v) {
    comma_for_value();
    out_ += std::to_string(v);
    return *this;
}

Writer& Writer::value(long long v) {
    comma_for_value();
    out_ += std::to_string(v);
    return *this;
}

Writer& Writer::value(std::size_t v) {
    comma_for_value();
    out_ += std::to_string(v);
    return *this;
}

Writer& Writer::value(bool v) {
    comma_for_value();
    out_ += v ? "true" : "false";
    return *this;
}

Writer& Writer::value(const char* v) { return value(std::string(v)); }

Writer& Writer::value(const std::string& v) {
    comma_for_value();
    out_ += '"';
    out_ += escape(v);
    out_ += '"';
    return *this;
}

Writer& Writer::null_value() {
    comma_for_value();
    out_ += "null";
    return *this;
}

void Writer::write_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << out_ << '\n';
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

} // namespace sqz::jsonw
