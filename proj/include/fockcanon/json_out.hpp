#pragma once

#include <complex>
#include <cstdio>
#include <string>
#include <vector>

namespace fockcanon {

// Minimal ordered JSON emitter. Artifact output must be byte-identical
// across runs: field order is the call order, floats are printed with 17
// significant digits, and no library-dependent formatting is involved.
inline std::string json_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  std::string out = buf;
  // Whole values stay recognizably floating-point ("1.0", not "1").
  if (out.find_first_not_of("-0123456789") == std::string::npos) out += ".0";
  return out;
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += ch;
    }
  }
  return out;
}

class JsonWriter {
public:
  std::string str() const { return out_; }

  JsonWriter& begin_object() { open('{'); return *this; }
  JsonWriter& end_object() { close('}'); return *this; }
  JsonWriter& begin_array() { open('['); return *this; }
  JsonWriter& end_array() { close(']'); return *this; }

  JsonWriter& key(const std::string& k) {
    separator();
    out_ += '"';
    out_ += json_escape(k);
    out_ += "\":";
    fresh_ = true;
    return *this;
  }

  JsonWriter& value(double v) { separator(); out_ += json_double(v); return *this; }
  JsonWriter& value(int v) { separator(); out_ += std::to_string(v); return *this; }
  JsonWriter& value(long long v) { separator(); out_ += std::to_string(v); return *this; }
  JsonWriter& value(bool v) { separator(); out_ += v ? "true" : "false"; return *this; }
  JsonWriter& value(const std::string& v) {
    separator();
    out_ += '"';
    out_ += json_escape(v);
    out_ += '"';
    return *this;
  }
  JsonWriter& value(const char* v) { return value(std::string(v)); }
  JsonWriter& null() { separator(); out_ += "null"; return *this; }

  JsonWriter& value(std::complex<double> v) {
    begin_array();
    value(v.real());
    value(v.imag());
    return end_array();
  }

private:
  void open(char ch) { separator(); out_ += ch; fresh_ = true; }
  void close(char ch) { out_ += ch; fresh_ = false; }
  void separator() {
    if (!fresh_ && !out_.empty()) {
      char last = out_.back();
      if (last != '{' && last != '[' && last != ':') out_ += ',';
    }
    fresh_ = false;
  }

  std::string out_;
  bool fresh_ = true;
};

}  // namespace fockcanon
