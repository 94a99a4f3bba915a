#ifndef HALFLINE_JSON_OUT_HPP
#define HALFLINE_JSON_OUT_HPP

#include <string>
#include <vector>

namespace halfline {

/// Format a double with 17 significant digits (round-trip exact, deterministic).
std::string fmt_g17(double v);

/// Minimal deterministic JSON writer: keys appear in insertion order and
/// numbers are printed with fmt_g17, so identical inputs give byte-identical
/// files.  Only what the report schemas need.
class json_writer {
  public:
    json_writer& begin_object();
    json_writer& end_object();
    json_writer& begin_array();
    json_writer& end_array();
    json_writer& key(const std::string& k);
    json_writer& value(double v);
    json_writer& value(const std::string& s);
    json_writer& value(bool b);
    json_writer& value(long long n);
    json_writer& value_array(const std::vector<double>& xs);

    /// key + scalar in one go
    json_writer& field(const std::string& k, double v) { return key(k).value(v); }
    json_writer& field(const std::string& k, const std::string& v) { return key(k).value(v); }
    json_writer& field(const std::string& k, bool v) { return key(k).value(v); }
    json_writer& field(const std::string& k, long long v) { return key(k).value(v); }
    json_writer& field(const std::string& k, const std::vector<double>& v) { return key(k).value_array(v); }

    std::string str() const { return out_; }

  private:
    void comma();
    std::string out_;
    std::vector<bool> has_items_;   // per open scope
    bool pending_key_ = false;
};

/// Write a file atomically: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);

/// CSV writer: header row, comma separators, LF endings, fmt_g17 numbers.
class csv_writer {
  public:
    explicit csv_writer(std::vector<std::string> header);
    void row(const std::vector<double>& values);
    std::string str() const { return out_; }

  private:
    std::string out_;
    std::size_t cols_;
};

/// Bare-bones SVG polyline chart (developer diagnostics, no interactivity).
std::string svg_line_chart(const std::string& title,
                           const std::vector<double>& x,
                           const std::vector<double>& y);

} // namespace halfline

#endif
