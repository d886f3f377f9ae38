#include "evprop/learning.hpp"

#include <cmath>
#include <ostream>

#include "json.hpp"

#include "csv.hpp"
#include "evprop/error.hpp"

namespace evprop {

CountMatrix count_effectives(const std::vector<PropagationTrace>& traces, const Frame& frame,
                             std::size_t levels) {
  if (levels < 1) throw InputError("at least one level is required");
  CountMatrix raw = CountMatrix::Zero(static_cast<Eigen::Index>(frame.size()),
                                      static_cast<Eigen::Index>(levels));
  for (const auto& trace : traces) {
    if (!(trace.frame == frame)) throw InputError("trace frame does not match the profile frame");
    for (const auto& e : trace.events) {
      if (e.level < 1 || e.level > levels) {
        throw InputError("trace event at level " + std::to_string(e.level) + " exceeds " +
                         std::to_string(levels) + " levels");
      }
      raw(static_cast<Eigen::Index>(e.link_type), static_cast<Eigen::Index>(e.level - 1)) += 1;
    }
  }
  return raw;
}

CountMatrix accrue(const CountMatrix& raw) {
  CountMatrix out = raw;
  for (Eigen::Index l = 1; l < out.cols(); ++l) out.col(l) += out.col(l - 1);
  return out;
}

CountMatrix difference(const CountMatrix& accrued) {
  CountMatrix out = accrued;
  for (Eigen::Index l = out.cols() - 1; l > 0; --l) out.col(l) -= accrued.col(l - 1);
  return out;
}

LevelProfile to_profile(std::string class_name, const Frame& frame, const CountMatrix& accrued) {
  if (static_cast<std::size_t>(accrued.rows()) != frame.size()) {
    throw InputError("count matrix has " + std::to_string(accrued.rows()) +
                     " rows for a frame of size " + std::to_string(frame.size()));
  }
  if ((accrued.array() < 0).any()) throw InputError("counts must be nonnegative");

  LevelProfile profile{std::move(class_name), frame, accrued, {}, {}};
  for (Eigen::Index l = 0; l < accrued.cols(); ++l) {
    const std::int64_t total = accrued.col(l).sum();
    ProbDistribution p =
        total > 0 ? ProbDistribution(frame, accrued.col(l).cast<double>() / static_cast<double>(total))
                  : ProbDistribution::uniform(frame);
    profile.bbas.push_back(consonant_transform(p));
    profile.probs.push_back(std::move(p));
  }
  return profile;
}

LevelProfile learn_profile(std::string class_name, const std::vector<PropagationTrace>& traces,
                           const Frame& frame, std::size_t levels) {
  return to_profile(std::move(class_name), frame, accrue(count_effectives(traces, frame, levels)));
}

void write_profile(const LevelProfile& profile, std::ostream& out) {
  nlohmann::ordered_json j;
  j["class_name"] = profile.class_name;
  j["frame"] = profile.frame.labels();
  j["levels"] = profile.levels();
  auto counts = nlohmann::ordered_json::array();
  auto probs = nlohmann::ordered_json::array();
  auto bbas = nlohmann::ordered_json::array();
  for (std::size_t l = 0; l < profile.levels(); ++l) {
    const auto col = profile.counts.col(static_cast<Eigen::Index>(l));
    counts.push_back(std::vector<std::int64_t>(col.data(), col.data() + col.size()));
    const auto& v = profile.probs[l].values();
    probs.push_back(std::vector<double>(v.data(), v.data() + v.size()));
    nlohmann::ordered_json masses = nlohmann::ordered_json::object();
    for (const auto& [set, value] : profile.bbas[l].focal_sets()) masses[std::to_string(set)] = value;
    bbas.push_back(std::move(masses));
  }
  j["counts"] = std::move(counts);
  j["probs"] = std::move(probs);
  j["bbas"] = std::move(bbas);
  out << j.dump(2) << '\n';
}

void save_profile(const LevelProfile& profile, const std::string& path) {
  auto out = csv::open_output(path);
  write_profile(profile, out);
  if (!out) throw IoError("failed writing '" + path + "'");
}

LevelProfile read_profile(std::istream& in) {
  try {
    const auto j = nlohmann::json::parse(in);
    const Frame frame(j.at("frame").get<std::vector<std::string>>());
    const auto levels = j.at("levels").get<std::size_t>();
    const auto& counts = j.at("counts");
    if (levels < 1 || counts.size() != levels) {
      throw InputError("profile: counts must list one row per level");
    }
    CountMatrix accrued(static_cast<Eigen::Index>(frame.size()), static_cast<Eigen::Index>(levels));
    for (std::size_t l = 0; l < levels; ++l) {
      const auto row = counts[l].get<std::vector<std::int64_t>>();
      if (row.size() != frame.size()) throw InputError("profile: count row has wrong length");
      for (std::size_t t = 0; t < row.size(); ++t) {
        accrued(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(l)) = row[t];
      }
    }
    for (Eigen::Index l = 1; l < accrued.cols(); ++l) {
      if ((accrued.col(l).array() < accrued.col(l - 1).array()).any()) {
        throw InputError("profile: counts must be non-decreasing across levels");
      }
    }
    LevelProfile profile = to_profile(j.at("class_name").get<std::string>(), frame, accrued);

    // Stored derived values are redundant; reject files where they disagree.
    if (j.contains("probs")) {
      const auto& probs = j.at("probs");
      if (probs.size() != levels) throw InputError("profile: probs must list one row per level");
      for (std::size_t l = 0; l < levels; ++l) {
        const auto row = probs[l].get<std::vector<double>>();
        if (row.size() != frame.size()) throw InputError("profile: probs row has wrong length");
        for (std::size_t t = 0; t < row.size(); ++t) {
          if (std::abs(row[t] - profile.probs[l][t]) > kTolerance) {
            throw InputError("profile: probs at level " + std::to_string(l + 1) +
                             " disagree with counts");
          }
        }
      }
    }
    if (j.contains("bbas")) {
      const auto& bbas = j.at("bbas");
      if (bbas.size() != levels) throw InputError("profile: bbas must list one entry per level");
      for (std::size_t l = 0; l < levels; ++l) {
        MassFunction::Masses masses;
        for (const auto& [key, value] : bbas[l].items()) {
          masses[static_cast<Subset>(std::stoul(key))] = value.get<double>();
        }
        const MassFunction stored(frame, std::move(masses));
        for (Subset s = 0; s <= frame.full_set(); ++s) {
          if (std::abs(stored.mass(s) - profile.bbas[l].mass(s)) > kTolerance) {
            throw InputError("profile: bbas at level " + std::to_string(l + 1) +
                             " disagree with counts");
          }
        }
      }
    }
    return profile;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("profile: ") + e.what());
  } catch (const std::logic_error& e) {
    throw InputError(std::string("profile: ") + e.what());
  }
}

LevelProfile load_profile(const std::string& path) {
  auto in = csv::open_input(path);
  return read_profile(in);
}

}  // namespace evprop
