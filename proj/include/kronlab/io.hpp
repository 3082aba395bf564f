#ifndef KRONLAB_IO_HPP
#define KRONLAB_IO_HPP

#include <map>
#include <string>
#include <vector>

namespace kron {

// RFC-4180 CSV: header row, fields quoted when they contain comma, quote or
// newline. Numeric cells are formatted with %.12g so identical inputs give
// byte-identical files.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void add_row(const std::vector<std::string>& cells);
    std::string str() const { return body_; }
    static std::string number(double v);
    static std::string integer(long long v);

private:
    void append_row(const std::vector<std::string>& cells);
    std::size_t columns_;
    std::string body_;
};

// Minimal static SVG 1.1 line plot, optionally log-log. No timestamps or
// other run-varying content.
class SvgPlot {
public:
    SvgPlot(std::string title, std::string x_label, std::string y_label,
            bool log_x = false, bool log_y = false);
    void add_series(const std::string& name, const std::vector<double>& x,
                    const std::vector<double>& y);
    std::string render() const;

private:
    std::string title_, x_label_, y_label_;
    bool log_x_, log_y_;
    struct Series {
        std::string name;
        std::vector<double> x, y;
    };
    std::vector<Series> series_;
};

// Flat key=value configuration with [section] headers; '#' starts a comment.
// Keys are addressed as "section.key"; later assignments win, so overrides
// are applied by appending. A key that already contains a dot is taken as
// fully qualified regardless of the section in effect.
class Config {
public:
    static Config parse(const std::string& text);
    void set(const std::string& dotted_key, const std::string& value);
    bool has(const std::string& dotted_key) const;
    std::string get(const std::string& dotted_key, const std::string& fallback = "") const;
    double get_double(const std::string& dotted_key, double fallback) const;
    long long get_int(const std::string& dotted_key, long long fallback) const;
    std::vector<double> get_list(const std::string& dotted_key) const; // comma separated
    const std::map<std::string, std::string>& entries() const { return kv_; }
    std::string canonical_text() const;

private:
    std::map<std::string, std::string> kv_;
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace kron

#endif
