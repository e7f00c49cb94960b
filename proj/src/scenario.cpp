#include "vigilance/scenario.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string_view>

#include "vigilance/errors.hpp"
#include "vigilance/io.hpp"

namespace vigilance {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double ParseDouble(std::string_view text, const std::string& field,
                   int line) {
  text = Trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(field, "expected a number, got '" + std::string(text) + "'",
                      line);
  }
  return v;
}

template <typename Int>
Int ParseInt(std::string_view text, const std::string& field, int line) {
  text = Trim(text);
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(field,
                      "expected an integer, got '" + std::string(text) + "'",
                      line);
  }
  return v;
}

std::vector<double> ParseList(std::string_view text, const std::string& field,
                              int line) {
  std::vector<double> out;
  text = Trim(text);
  if (text.empty()) throw ConfigError(field, "empty list", line);
  while (true) {
    const auto comma = text.find(',');
    out.push_back(ParseDouble(text.substr(0, comma), field, line));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string JoinList(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += FormatDouble(v[i]);
  }
  return out;
}

using Setter = std::function<void(Scenario&, std::string_view, int)>;

const std::map<std::string, Setter>& Setters() {
  static const std::map<std::string, Setter> setters = {
      {"game.n",
       [](Scenario& s, std::string_view v, int l) {
         s.game.n_total = ParseInt<int>(v, "n", l);
       }},
      {"game.m_greedy",
       [](Scenario& s, std::string_view v, int l) {
         s.game.n_greedy = ParseInt<int>(v, "m_greedy", l);
       }},
      {"game.v_vigilante",
       [](Scenario& s, std::string_view v, int l) {
         s.game.n_vigilante = ParseInt<int>(v, "v_vigilante", l);
       }},
      {"game.lambda",
       [](Scenario& s, std::string_view v, int l) {
         s.game.lambda = ParseList(v, "lambda", l);
       }},
      {"game.rho",
       [](Scenario& s, std::string_view v, int l) {
         s.game.rho = ParseList(v, "rho", l);
       }},
      {"game.phi0_exponent",
       [](Scenario& s, std::string_view v, int l) {
         v = Trim(v);
         if (v == "fair") {
           s.game.phi0_convention = Phi0Convention::kFair;
         } else if (v == "as_printed") {
           s.game.phi0_convention = Phi0Convention::kAsPrinted;
         } else {
           throw ConfigError("phi0_exponent",
                             "expected 'fair' or 'as_printed'", l);
         }
       }},
      {"play.epsilon_g",
       [](Scenario& s, std::string_view v, int l) {
         s.epsilon_g = ParseDouble(v, "epsilon_g", l);
       }},
      {"play.epsilon_a",
       [](Scenario& s, std::string_view v, int l) {
         s.epsilon_a = ParseDouble(v, "epsilon_a", l);
       }},
      {"play.t_max",
       [](Scenario& s, std::string_view v, int l) {
         s.t_max = ParseInt<int>(v, "t_max", l);
       }},
      {"play.conv_tol",
       [](Scenario& s, std::string_view v, int l) {
         s.conv_tol = ParseDouble(v, "conv_tol", l);
       }},
      {"play.window",
       [](Scenario& s, std::string_view v, int l) {
         s.window = ParseInt<int>(v, "window", l);
       }},
      {"play.init_g",
       [](Scenario& s, std::string_view v, int l) {
         s.init_g = ParseList(v, "init_g", l);
       }},
      {"play.init_a",
       [](Scenario& s, std::string_view v, int l) {
         s.init_a = ParseList(v, "init_a", l);
       }},
      {"play.mode",
       [](Scenario& s, std::string_view v, int l) {
         v = Trim(v);
         if (v == "exact") {
           s.mode = Observation::kExact;
         } else if (v == "channel") {
           s.mode = Observation::kChannel;
         } else {
           throw ConfigError("mode", "expected 'exact' or 'channel'", l);
         }
       }},
      {"flow.dt",
       [](Scenario& s, std::string_view v, int l) {
         s.flow.dt = ParseDouble(v, "dt", l);
       }},
      {"flow.steps",
       [](Scenario& s, std::string_view v, int l) {
         s.flow.steps = ParseInt<int>(v, "steps", l);
       }},
      {"flow.grid",
       [](Scenario& s, std::string_view v, int l) {
         s.flow.grid = ParseInt<int>(v, "grid", l);
       }},
      {"channel.slots",
       [](Scenario& s, std::string_view v, int l) {
         s.channel.slots = ParseInt<std::size_t>(v, "slots", l);
       }},
      {"channel.seed",
       [](Scenario& s, std::string_view v, int l) {
         s.channel.seed = ParseInt<std::uint64_t>(v, "seed", l);
       }},
      {"channel.window",
       [](Scenario& s, std::string_view v, int l) {
         s.channel.window = ParseInt<std::size_t>(v, "window", l);
       }},
      {"output.dir",
       [](Scenario& s, std::string_view v, int) {
         s.out_dir = std::string(Trim(v));
       }},
  };
  return setters;
}

}  // namespace

void Scenario::Validate() const {
  game.Validate();
  ToPlayParams().Validate();
  InitialProfile().Validate(game);
  if (!(flow.dt > 0.0)) throw ConfigError("dt", "time step must be positive");
  if (flow.steps < 0) throw ConfigError("steps", "need steps >= 0");
  if (flow.grid < 2) throw ConfigError("grid", "need grid >= 2");
  if (channel.slots < 1) throw ConfigError("slots", "need slots >= 1");
  if (channel.window < 1) throw ConfigError("window", "need window >= 1");
}

StrategyProfile Scenario::InitialProfile() const {
  StrategyProfile p = StrategyProfile::Fair(game);
  if (init_g) p.g = *init_g;
  if (init_a) p.a = *init_a;
  return p;
}

PlayParams Scenario::ToPlayParams() const {
  PlayParams p;
  p.epsilon_g = epsilon_g;
  p.epsilon_a = epsilon_a;
  p.t_max = t_max;
  p.conv_tol = conv_tol;
  p.window = window;
  p.init = InitialProfile();
  p.observation = mode;
  p.observation_slots = channel.window;
  p.seed = channel.seed;
  return p;
}

bool operator==(const Scenario& l, const Scenario& r) {
  return l.game.n_total == r.game.n_total &&
         l.game.n_greedy == r.game.n_greedy &&
         l.game.n_vigilante == r.game.n_vigilante &&
         l.game.lambda == r.game.lambda && l.game.rho == r.game.rho &&
         l.game.phi0_convention == r.game.phi0_convention &&
         l.epsilon_g == r.epsilon_g && l.epsilon_a == r.epsilon_a &&
         l.t_max == r.t_max && l.conv_tol == r.conv_tol &&
         l.window == r.window && l.init_g == r.init_g &&
         l.init_a == r.init_a && l.mode == r.mode &&
         l.flow.dt == r.flow.dt && l.flow.steps == r.flow.steps &&
         l.flow.grid == r.flow.grid && l.channel.slots == r.channel.slots &&
         l.channel.seed == r.channel.seed &&
         l.channel.window == r.channel.window && l.out_dir == r.out_dir;
}

Scenario ParseScenario(std::istream& in) {
  Scenario s;
  std::string section;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find_first_of("#;"); hash != line.npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("", "unterminated section header", line_no);
      }
      section = std::string(Trim(line.substr(1, line.size() - 2)));
      if (section != "game" && section != "play" && section != "flow" &&
          section != "channel" && section != "output") {
        throw ConfigError(section, "unknown section", line_no);
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == line.npos) {
      throw ConfigError("", "expected 'key = value'", line_no);
    }
    const std::string key(Trim(line.substr(0, eq)));
    if (section.empty()) {
      throw ConfigError(key, "key outside of any section", line_no);
    }
    const auto it = Setters().find(section + "." + key);
    if (it == Setters().end()) {
      throw ConfigError(key, "unknown key in [" + section + "]", line_no);
    }
    it->second(s, line.substr(eq + 1), line_no);
  }
  return s;
}

Scenario LoadScenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  return ParseScenario(in);
}

std::string SerializeScenario(const Scenario& s) {
  std::ostringstream out;
  out << "[game]\n"
      << "n = " << s.game.n_total << "\n"
      << "m_greedy = " << s.game.n_greedy << "\n"
      << "v_vigilante = " << s.game.n_vigilante << "\n"
      << "lambda = " << JoinList(s.game.lambda) << "\n"
      << "rho = " << JoinList(s.game.rho) << "\n"
      << "phi0_exponent = "
      << (s.game.phi0_convention == Phi0Convention::kFair ? "fair"
                                                          : "as_printed")
      << "\n\n[play]\n"
      << "epsilon_g = " << FormatDouble(s.epsilon_g) << "\n"
      << "epsilon_a = " << FormatDouble(s.epsilon_a) << "\n"
      << "t_max = " << s.t_max << "\n"
      << "conv_tol = " << FormatDouble(s.conv_tol) << "\n"
      << "window = " << s.window << "\n";
  if (s.init_g) out << "init_g = " << JoinList(*s.init_g) << "\n";
  if (s.init_a) out << "init_a = " << JoinList(*s.init_a) << "\n";
  out << "mode = " << (s.mode == Observation::kExact ? "exact" : "channel")
      << "\n\n[flow]\n"
      << "dt = " << FormatDouble(s.flow.dt) << "\n"
      << "steps = " << s.flow.steps << "\n"
      << "grid = " << s.flow.grid << "\n\n[channel]\n"
      << "slots = " << s.channel.slots << "\n"
      << "seed = " << s.channel.seed << "\n"
      << "window = " << s.channel.window << "\n\n[output]\n"
      << "dir = " << s.out_dir << "\n";
  return out.str();
}

}  // namespace vigilance
