#include "secgame/csv.hpp"

#include <cstdio>
#include <sstream>

#include "secgame/errors.hpp"

namespace secgame {

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

std::string csv_int(long long v) {
    return std::to_string(v);
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : path_(path), tmp_path_(path + ".tmp"), out_(tmp_path_) {
    if (!out_) throw IoError("CsvWriter: cannot open " + tmp_path_ + " for writing");
    row(header);
}

CsvWriter::~CsvWriter() {
    if (!closed_) {
        // Abandoned writer: drop the partial file rather than publish it.
        out_.close();
        std::remove(tmp_path_.c_str());
    }
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

void CsvWriter::close() {
    if (closed_) return;
    out_.flush();
    if (!out_) throw IoError("CsvWriter: write to " + tmp_path_ + " failed");
    out_.close();
    if (std::rename(tmp_path_.c_str(), path_.c_str()) != 0)
        throw IoError("CsvWriter: cannot move " + tmp_path_ + " to " + path_);
    closed_ = true;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("read_csv: cannot open " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.push_back("");
        rows.push_back(std::move(cells));
    }
    return rows;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw IoError("write_text_atomic: cannot open " + tmp);
        out << content;
        out.flush();
        if (!out) throw IoError("write_text_atomic: write to " + tmp + " failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw IoError("write_text_atomic: cannot move " + tmp + " to " + path);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("read_text: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace secgame
