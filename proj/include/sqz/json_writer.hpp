// Streaming JSON writer with fixed numeric formatting (17 significant
// digits) and insertion-ordered keys, so a given result always serializes to
// exactly the same bytes. Reading/validation of JSON uses a full parser; this
// exists only because general-purpose serializers do not pin their float
// formatting.
#pragma once

#include <string>
#include <vector>

namespace sqz::jsonw {

class Writer {
public:
    Writer& begin_object();
    Writer& end_object();
    Writer& begin_array();
    Writer& end_array();
    Writer& key(const std::string& name);
    Writer& value(double v);
    Writer& value(int v);
    Writer& value(long long v);
    Writer& value(std::size_t v);
    Writer& value(bool v);
    Writer& value(const char* v);
    Writer& value(const std::string& v);
    Writer& null_value();

    // key/value in one call
    template <typename T>
    Writer& kv(const std::string& name, const T& v) {
        key(name);
        return value(v);
    }

    std::string str() const { return out_; }
    void write_file(const std::string& path) const; // appends trailing newline

private:
    void comma_for_value();
    void indent();

    std::string out_;
    // stack entries: 'o' object, 'a' array; parallel first-element flags
    std::vector<char> stack_;
    std::vector<bool> first_;
    bool pending_key_ = false;
};

} // namespace sqz::jsonw
