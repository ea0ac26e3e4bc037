#pragma once

#include <map>
#include <string>
#include <vector>

namespace stlmine {

/* A finite timed trace: strictly increasing time stamps starting at 0 and one
 * sampled value per named channel per stamp.  Semantics elsewhere are purely
 * discrete -- we never interpolate between samples. */
class TimedTrace {
public:
  TimedTrace(std::vector<double> times,
             std::map<std::string, std::vector<double>> channels);

  const std::vector<double>& times() const { return times_; }
  const std::map<std::string, std::vector<double>>& channels() const {
    return channels_;
  }

  std::size_t size() const { return times_.size(); }
  bool has_channel(const std::string& name) const;
  const std::vector<double>& channel(const std::string& name) const;
  std::vector<std::string> channel_names() const;

  // Index of an exact time stamp; throws if t is not a sample point.
  std::size_t index_of(double t) const;

  double duration() const { return times_.back(); }

  bool operator==(const TimedTrace& other) const = default;

private:
  std::vector<double> times_;
  std::map<std::string, std::vector<double>> channels_;
};

// CSV layout: header "time,<sig1>,<sig2>,...", one row per sample.
TimedTrace read_trace_csv(const std::string& path);
void write_trace_csv(const std::string& path, const TimedTrace& trace);

}  // namespace stlmine
