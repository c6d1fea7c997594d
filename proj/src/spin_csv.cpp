#include "qaudit/spin_csv.hpp"

#include <charconv>
#include <fstream>
#include <string>
#include <string_view>

#include "qaudit/errors.hpp"

namespace qaudit {

BitSequence spins_to_bits(const AnnealSample& sample) {
    BitBuilder b(sample.spins.size());
    for (std::size_t i = 0; i < sample.spins.size(); ++i) {
        const int s = sample.spins[i];
        if (s != 1 && s != -1)
            throw Error("malformed sample: spin at index " + std::to_string(i) +
                        " is " + std::to_string(s) + ", expected +1 or -1");
        b.push_bit(s == 1);
    }
    return b.take();
}

namespace {

std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            cells.push_back(line.substr(pos));
            break;
        }
        cells.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return cells;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

} // namespace

std::uint64_t ingest_spin_csv(const std::filesystem::path& path,
                              const std::function<void(const AnnealSample&)>& sink) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty spin CSV", 1, 1);

    const auto header = split_csv_line(line);
    if (header.empty() || trim(header[0]) != "anneal_index")
        throw ParseError("spin CSV header must start with 'anneal_index'", 1, 1);

    std::int64_t prev_qubit = -1;
    for (std::size_t c = 1; c < header.size(); ++c) {
        const auto cell = trim(header[c]);
        if (cell.size() < 2 || cell[0] != 'q')
            throw ParseError("header column must be q<id>", 1, c + 1);
        std::int64_t id = 0;
        const auto* first = cell.data() + 1;
        const auto* last = cell.data() + cell.size();
        auto [p, ec] = std::from_chars(first, last, id);
        if (ec != std::errc() || p != last || id <= prev_qubit)
            throw ParseError("qubit ids must be ascending integers", 1, c + 1);
        prev_qubit = id;
    }
    const std::size_t n_qubits = header.size() - 1;
    if (n_qubits == 0) throw ParseError("spin CSV names no qubit columns", 1, 1);

    AnnealSample sample;
    sample.spins.resize(n_qubits);

    std::uint64_t rows = 0;
    std::uint64_t file_row = 1; // header consumed
    std::optional<std::uint64_t> prev_index;
    while (std::getline(in, line)) {
        ++file_row;
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw ParseError("row has " + std::to_string(cells.size()) + " cells, expected " +
                                 std::to_string(header.size()),
                             file_row, 1);
        const auto idx_cell = trim(cells[0]);
        std::uint64_t anneal_index = 0;
        auto [p, ec] = std::from_chars(idx_cell.data(), idx_cell.data() + idx_cell.size(), anneal_index);
        if (ec != std::errc() || p != idx_cell.data() + idx_cell.size())
            throw ParseError("bad anneal_index cell", file_row, 1);

        for (std::size_t c = 1; c < cells.size(); ++c) {
            const auto cell = trim(cells[c]);
            if (cell == "+1" || cell == "1")
                sample.spins[c - 1] = 1;
            else if (cell == "-1")
                sample.spins[c - 1] = -1;
            else
                throw ParseError("spin cell must be +1, 1 or -1, got '" + std::string(cell) + "'",
                                 file_row, c + 1);
        }
        sample.anneal_index = rows; // ordinal in the stream
        sample.epoch_tag.reset();
        if (prev_index && anneal_index != *prev_index + 1)
            sample.epoch_tag = anneal_index; // gap marker: source index after the jump
        prev_index = anneal_index;
        sink(sample);
        ++rows;
    }
    return rows;
}

} // namespace qaudit
