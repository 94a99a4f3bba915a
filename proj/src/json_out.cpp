#include "halfline/json_out.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace halfline {

std::string fmt_g17(double v) {
    if (std::isnan(v)) return "null";
    if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void json_writer::comma() {
    if (!has_items_.empty() && has_items_.back() && !pending_key_) out_ += ',';
    if (!has_items_.empty() && !pending_key_) has_items_.back() = true;
}

json_writer& json_writer::begin_object() {
    comma();
    pending_key_ = false;
    out_ += '{';
    has_items_.push_back(false);
    return *this;
}

json_writer& json_writer::end_object() {
    out_ += '}';
    has_items_.pop_back();
    return *this;
}

json_writer& json_writer::begin_array() {
    comma();
    pending_key_ = false;
    out_ += '[';
    has_items_.push_back(false);
    return *this;
}

json_writer& json_writer::end_array() {
    out_ += ']';
    has_items_.pop_back();
    return *this;
}

json_writer& json_writer::key(const std::string& k) {
    comma();
    out_ += '"';
    out_ += k;
    out_ += "\":";
    pending_key_ = true;
    return *this;
}

json_writer& json_writer::value(double v) {
    comma();
    pending_key_ = false;
    out_ += fmt_g17(v);
    return *this;
}

json_writer& json_writer::value(const std::string& s) {
    comma();
    pending_key_ = false;
    out_ += '"';
    for (char c : s) {
        switch (c) {
            case '"': out_ += "\\\""; break;
            case '\\': out_ += "\\\\"; break;
            case '\n': out_ += "\\n"; break;
            case '\t': out_ += "\\t"; break;
            default: out_ += c;
        }
    }
    out_ += '"';
    return *this;
}

json_writer& json_writer::value(bool b) {
    comma();
    pending_key_ = false;
    out_ += b ? "true" : "false";
    return *this;
}

json_writer& json_writer::value(long long n) {
    comma();
    pending_key_ = false;
    out_ += std::to_string(n);
    return *this;
}

json_writer& json_writer::value_array(const std::vector<double>& xs) {
    begin_array();
    for (double x : xs) value(x);
    return end_array();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open for writing: " + tmp);
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed: " + path);
}

csv_writer::csv_writer(std::vector<std::string> header) : cols_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out_ += ',';
        out_ += header[i];
    }
    out_ += '\n';
}

void csv_writer::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < cols_; ++i) {
        if (i) out_ += ',';
        out_ += fmt_g17(i < values.size() ? values[i] : 0.0);
    }
    out_ += '\n';
}

std::string svg_line_chart(const std::string& title,
                           const std::vector<double>& x,
                           const std::vector<double>& y) {
    const int W = 800, H = 500, ML = 70, MR = 20, MT = 40, MB = 50;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (!x.empty()) {
        xmin = *std::min_element(x.begin(), x.end());
        xmax = *std::max_element(x.begin(), x.end());
        ymin = *std::min_element(y.begin(), y.end());
        ymax = *std::max_element(y.begin(), y.end());
    }
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;
    auto px = [&](double v) { return ML + (v - xmin) / (xmax - xmin) * (W - ML - MR); };
    auto py = [&](double v) { return H - MB - (v - ymin) / (ymax - ymin) * (H - MT - MB); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\">\n";
    s += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    s += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" + title + "</text>\n";
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n",
                  ML, H - MB, W - MR, H - MB);
    s += buf;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n",
                  ML, MT, ML, H - MB);
    s += buf;
    for (int i = 0; i <= 4; ++i) {
        double xv = xmin + i * (xmax - xmin) / 4;
        double yv = ymin + i * (ymax - ymin) / 4;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.1f\" y=\"%d\" text-anchor=\"middle\" font-size=\"11\">%.4g</text>\n",
                      px(xv), H - MB + 18, xv);
        s += buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%d\" y=\"%.1f\" text-anchor=\"end\" font-size=\"11\">%.4g</text>\n",
                      ML - 6, py(yv) + 4, yv);
        s += buf;
    }
    s += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (!std::isfinite(y[i])) continue;
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x[i]), py(y[i]));
        s += buf;
    }
    s += "\"/>\n</svg>\n";
    return s;
}

} // namespace halfline
