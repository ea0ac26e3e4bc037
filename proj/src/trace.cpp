#include "stlmine/trace.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stlmine {

TimedTrace::TimedTrace(std::vector<double> times,
                       std::map<std::string, std::vector<double>> channels)
    : times_(std::move(times)), channels_(std::move(channels)) {
  if (times_.empty())
    throw std::invalid_argument("trace: needs at least one sample");
  if (times_.front() != 0.0)
    throw std::invalid_argument("trace: first time stamp must be 0");
  for (std::size_t i = 1; i < times_.size(); ++i)
    if (!(times_[i - 1] < times_[i]))
      throw std::invalid_argument("trace: time stamps must strictly increase");
  if (channels_.empty())
    throw std::invalid_argument("trace: needs at least one channel");
  for (const auto& [name, values] : channels_)
    if (values.size() != times_.size())
      throw std::invalid_argument("trace: channel '" + name + "' has " +
                                  std::to_string(values.size()) +
                                  " samples, expected " +
                                  std::to_string(times_.size()));
}

bool TimedTrace::has_channel(const std::string& name) const {
  return channels_.count(name) != 0;
}

const std::vector<double>& TimedTrace::channel(const std::string& name) const {
  auto it = channels_.find(name);
  if (it == channels_.end())
    throw std::invalid_argument("trace: no channel named '" + name + "'");
  return it->second;
}

std::vector<std::string> TimedTrace::channel_names() const {
  std::vector<std::string> names;
  names.reserve(channels_.size());
  for (const auto& [name, _] : channels_) names.push_back(name);
  return names;
}

std::size_t TimedTrace::index_of(double t) const {
  auto it = std::lower_bound(times_.begin(), times_.end(), t);
  if (it == times_.end() || *it != t)
    throw std::invalid_argument("trace: t=" + std::to_string(t) +
                                " is not a sample point");
  return static_cast<std::size_t>(it - times_.begin());
}

namespace {

double parse_cell(const std::string& cell, const std::string& path) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || ptr != cell.data() + cell.size())
    throw std::runtime_error(path + ": bad numeric cell '" + cell + "'");
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

// Shortest representation that round-trips; keeps CSV output deterministic.
std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

TimedTrace read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "time")
    throw std::runtime_error(path + ": header must be 'time,<sig>,...'");

  std::vector<double> times;
  std::vector<std::vector<double>> columns(header.size() - 1);
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw std::runtime_error(path + ": row " + std::to_string(row) + " has " +
                               std::to_string(cells.size()) + " cells, expected " +
                               std::to_string(header.size()));
    times.push_back(parse_cell(cells[0], path));
    for (std::size_t c = 1; c < cells.size(); ++c)
      columns[c - 1].push_back(parse_cell(cells[c], path));
  }

  std::map<std::string, std::vector<double>> channels;
  for (std::size_t c = 1; c < header.size(); ++c) {
    if (header[c].empty())
      throw std::runtime_error(path + ": empty channel name in header");
    if (!channels.emplace(header[c], std::move(columns[c - 1])).second)
      throw std::runtime_error(path + ": duplicate channel '" + header[c] + "'");
  }
  return TimedTrace(std::move(times), std::move(channels));
}

void write_trace_csv(const std::string& path, const TimedTrace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace file: " + path);

  out << "time";
  auto names = trace.channel_names();
  for (const auto& name : names) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out << format_double(trace.times()[i]);
    for (const auto& name : names)
      out << ',' << format_double(trace.channel(name)[i]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing trace file: " + path);
}

}  // namespace stlmine
