#ifndef SECGAME_CSV_HPP
#define SECGAME_CSV_HPP

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace secgame {

/// Doubles are printed with %.15g everywhere, so identical runs produce
/// byte-identical files.
std::string csv_num(double v);
std::string csv_int(long long v);

/// Writes to `path + ".tmp"` and renames into place on close(), so readers
/// never observe a half-written file.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    ~CsvWriter();

    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<std::string>& cells);
    void close();

private:
    std::string path_;
    std::string tmp_path_;
    std::ofstream out_;
    bool closed_ = false;
};

/// Rows of a comma-separated file, header included. Quoting is not supported;
/// none of the writers here produce quoted cells.
std::vector<std::vector<std::string>> read_csv(const std::string& path);

/// Atomic whole-file text write (tmp + rename).
void write_text_atomic(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

} // namespace secgame

#endif
