// adlab command-line interface.  Talks to the library exclusively through
// the C API in adlab/adlab.h; JSON results pass through unchanged, CSV is
// derived locally.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
//             3 budget exhausted.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "adlab/adlab.h"

using nlohmann::json;

namespace {

struct StringOut {
  char* s = nullptr;
  ~StringOut() { adlab_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

int fail_with(adlab_status st) {
  std::cerr << "error: " << adlab_last_error() << "\n";
  switch (st) {
    case ADLAB_ERR_BUDGET_EXHAUSTED: return 3;
    case ADLAB_ERR_INVALID_ARGUMENT:
    case ADLAB_ERR_PARSE:
    case ADLAB_ERR_SCHEMA: return 2;
    case ADLAB_ERR_VERIFICATION_FAILED: return 1;
    default: return 1;
  }
}

struct GlobalOpts {
  std::string primes, bases;
  std::string cache_dir;
  unsigned threads = 1;
  bool csv = false;
  long long seed = 0;  // reserved; nothing observable depends on it
  std::string cap_magnitude;
  std::vector<std::string> caps;  // BASE=EXP entries
  unsigned cap2 = 0, cap3 = 0;
  bool have_cap2 = false, have_cap3 = false;
};

using GensetPtr = std::unique_ptr<adlab_genset, decltype(&adlab_genset_free)>;
using CapsPtr = std::unique_ptr<adlab_caps, decltype(&adlab_caps_free)>;
using SessionPtr =
    std::unique_ptr<adlab_session, decltype(&adlab_session_free)>;

GensetPtr make_genset(const GlobalOpts& g, adlab_status* st) {
  adlab_genset* out = nullptr;
  if (!g.primes.empty() && !g.bases.empty()) {
    std::cerr << "error: give exactly one of --primes or --bases\n";
    *st = ADLAB_ERR_INVALID_ARGUMENT;
    return {nullptr, adlab_genset_free};
  }
  if (g.primes.empty() && g.bases.empty()) {
    std::cerr << "error: a generating set is required (--primes or --bases)\n";
    *st = ADLAB_ERR_INVALID_ARGUMENT;
    return {nullptr, adlab_genset_free};
  }
  *st = g.primes.empty()
            ? adlab_genset_new_power_union(g.bases.c_str(), &out)
            : adlab_genset_new_smooth(g.primes.c_str(), &out);
  return {out, adlab_genset_free};
}

CapsPtr make_caps(const GlobalOpts& g, const GensetPtr& gs, adlab_status* st) {
  adlab_caps* caps = nullptr;
  *st = adlab_caps_default(gs.get(), &caps);
  CapsPtr out{caps, adlab_caps_free};
  if (*st != ADLAB_OK) return out;
  auto setcap = [&](uint64_t base, unsigned cap) {
    if (*st == ADLAB_OK) *st = adlab_caps_set_exponent(out.get(), base, cap);
  };
  if (g.have_cap2) setcap(2, g.cap2);
  if (g.have_cap3) setcap(3, g.cap3);
  for (const std::string& entry : g.caps) {
    auto eq = entry.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: --cap expects BASE=EXPONENT, got " << entry << "\n";
      *st = ADLAB_ERR_INVALID_ARGUMENT;
      return out;
    }
    setcap(std::stoull(entry.substr(0, eq)),
           static_cast<unsigned>(std::stoul(entry.substr(eq + 1))));
  }
  if (*st == ADLAB_OK && !g.cap_magnitude.empty())
    *st = adlab_caps_set_magnitude(out.get(), g.cap_magnitude.c_str());
  return out;
}

SessionPtr make_session(const GlobalOpts& g, adlab_status* st) {
  adlab_session* s = nullptr;
  *st = adlab_session_new(&s);
  SessionPtr out{s, adlab_session_free};
  if (*st == ADLAB_OK && !g.cache_dir.empty())
    *st = adlab_session_set_cache_dir(out.get(), g.cache_dir.c_str());
  if (*st == ADLAB_OK && g.threads > 1)
    *st = adlab_session_set_threads(out.get(), g.threads);
  return out;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string witness_compact(const json& w) {
  if (w.is_null()) return "";
  std::string out;
  for (const auto& t : w.at("terms")) {
    out += t.at("sign").get<int>() < 0 ? "-" : "+";
    out += t.at("value").get<std::string>();
  }
  if (out.empty()) out = "0";
  return out;
}

void print_length_bound_csv(const json& b) {
  std::cout << b.at("n").get<std::string>() << ","
            << b.at("lower").get<unsigned>() << ","
            << (b.at("upper").is_null()
                    ? ""
                    : std::to_string(b.at("upper").get<unsigned>()))
            << "," << b.at("status").get<std::string>() << ","
            << csv_escape(witness_compact(b.at("witness"))) << "\n";
}

int emit_length_bounds(const json& rows, bool csv) {
  if (!csv) {
    std::cout << rows.dump(2) << "\n";
    return 0;
  }
  std::cout << "n,lower,upper,status,witness\n";
  for (const auto& b : rows) print_length_bound_csv(b);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"word lengths of integers under infinite generating sets"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  // --h is a documented option on several subcommands, so help must not
  // claim the single-letter form.
  app.set_help_flag("--help", "print help");
  app.set_version_flag("--version", []() { return adlab_version(); });
  app.option_defaults()->ignore_case(false);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalOpts g;
  app.add_option("--primes", g.primes, "smooth set over these primes (CSV)");
  app.add_option("--bases", g.bases, "union of power towers of these bases");
  app.add_option("--cache-dir", g.cache_dir, "result cache directory");
  app.add_option("--threads", g.threads, "worker threads (results identical)");
  app.add_option("--seed", g.seed, "reserved");
  app.add_flag("--csv", g.csv, "CSV output (default JSON)");
  app.add_flag("--json", [](std::int64_t) {}, "JSON output (default)");
  auto* c2 = app.add_option("--cap2", g.cap2, "exponent cap for base 2");
  auto* c3 = app.add_option("--cap3", g.cap3, "exponent cap for base 3");
  app.add_option("--cap", g.caps, "exponent cap BASE=EXPONENT (repeatable)");
  app.add_option("--cap-magnitude", g.cap_magnitude,
                 "magnitude cap W (decimal)");

  // length N
  std::string arg_n, arg_x, arg_y;
  unsigned arg_hmax = 6, arg_h = 1;
  int64_t arg_window = 100;
  uint64_t arg_nmax = 0, arg_maxn = 0, arg_maxmod = 0;
  unsigned arg_maxq = 0, arg_top = 10;
  bool arg_witnesses = false;
  std::string arg_dir, arg_file;
  std::vector<std::string> arg_files;
  uint64_t arg_range = 0;
  uint64_t arg_delta_n = 0;

  auto* c_length = app.add_subcommand("length", "length bound for N");
  c_length->add_option("N", arg_n)->required();
  c_length->add_option("--hmax", arg_hmax, "largest word length searched");

  auto* c_dist = app.add_subcommand("distance", "word distance d(x, y)");
  c_dist->add_option("x", arg_x)->required();
  c_dist->add_option("y", arg_y)->required();
  c_dist->add_option("--hmax", arg_hmax);

  auto* c_ball = app.add_subcommand("ball", "closed ball within a window");
  c_ball->add_option("--h", arg_h)->required();
  c_ball->add_option("--window", arg_window)->required();
  c_ball->add_flag("--witnesses", arg_witnesses, "attach witnesses");

  auto* c_sphere = app.add_subcommand("sphere", "sphere within a window");
  c_sphere->add_option("--h", arg_h)->required();
  c_sphere->add_option("--window", arg_window)->required();

  auto* c_lambda =
      app.add_subcommand("lambda", "smallest integer of length exactly h");
  c_lambda->add_option("--h", arg_h)->required();
  c_lambda->add_option("--nmax", arg_nmax, "scan limit (default 10^6)");
  c_lambda->add_option("--emit-evidence", arg_dir, "write evidence bundle");

  auto* c_table =
      app.add_subcommand("exclusion-table", "length bounds for 1..N");
  c_table->add_option("--h", arg_h)->required();
  c_table->add_option("--range", arg_range)->required();

  auto* c_delta = app.add_subcommand("delta", "primes p with (p-1) | n");
  c_delta->add_option("N", arg_delta_n)->required();

  auto* c_dsearch =
      app.add_subcommand("delta-search", "highly divisible candidates");
  c_dsearch->add_option("--max-n", arg_maxn)->required();
  c_dsearch->add_option("--top", arg_top);

  auto* c_obstruct =
      app.add_subcommand("obstruct", "search a modular obstruction");
  c_obstruct->add_option("--h", arg_h)->required();
  c_obstruct->add_option("--max-n", arg_maxn);
  c_obstruct->add_option("--max-q", arg_maxq);
  c_obstruct->add_option("--max-modulus", arg_maxmod);
  c_obstruct->add_option("--out", arg_file, "write the certificate here");

  auto* c_verify = app.add_subcommand("verify", "verify certificate files");
  c_verify->add_option("files", arg_files)->required();

  auto* c_cache = app.add_subcommand("cache", "cache maintenance");
  auto* c_gc = c_cache->add_subcommand("gc", "drop stale entries");

  auto* c_repr = app.add_subcommand(
      "representable", "representation with exactly h signed terms");
  c_repr->add_option("N", arg_n)->required();
  c_repr->add_option("--h", arg_h)->required();
  std::string arg_record;
  c_repr->add_option("--out", arg_record,
                     "write a witness or exhaustive-exclusion record");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  g.have_cap2 = c2->count() > 0;
  g.have_cap3 = c3->count() > 0;

  adlab_status st = ADLAB_OK;
  SessionPtr session = make_session(g, &st);
  if (st != ADLAB_OK) return fail_with(st);

  auto with_genset = [&](auto&& fn) -> int {
    GensetPtr gs = make_genset(g, &st);
    if (st != ADLAB_OK) return 2;
    CapsPtr caps = make_caps(g, gs, &st);
    if (st != ADLAB_OK) return fail_with(st);
    return fn(gs, caps);
  };

  if (*c_length) {
    return with_genset([&](GensetPtr& gs, CapsPtr& caps) {
      StringOut out;
      st = adlab_length(session.get(), gs.get(), arg_n.c_str(), arg_hmax,
                        caps.get(), &out.s);
      if (st != ADLAB_OK) return fail_with(st);
      json row = json::parse(out.str());
      return emit_length_bounds(json::array({row}), g.csv);
    });
  }
  if (*c_dist) {
    return with_genset([&](GensetPtr& gs, CapsPtr& caps) {
      StringOut out;
      st = adlab_metric_distance(session.get(), gs.get(), arg_x.c_str(),
                                 arg_y.c_str(), arg_hmax, caps.get(), &out.s);
      if (st != ADLAB_OK) return fail_with(st);
      return emit_length_bounds(json::array({json::parse(out.str())}), g.csv);
    });
  }
  if (*c_ball) {
    return with_genset([&](GensetPtr& gs, CapsPtr& caps) {
      StringOut out;
      bool witnesses = arg_witnesses || arg_window <= 5000;
      st = adlab_ball(session.get(), gs.get(), arg_h, arg_window, caps.get(),
                      witnesses, &out.s);
      if (st != ADLAB_OK) return fail_with(st);
      json res = json::parse(out.str());
      if (!g.csv) {
        std::cout << res.dump(2) << "\n";
        return 0;
      }
      std::cout << "n,lower,upper,status,witness\n";
      for (const auto& e : res.at("entries")) {
        unsigned len = e.at("length").get<unsigned>();
        std::cout << e.at("n").get<std::string>() << "," << len << "," << len
                  << ",CAP_CONDITIONAL,"
                  << csv_escape(e.contains("witness")
                                    ? witness_compact(e.at("witness"))
                                    : "")
                  << "\n";
      }
      return 0;
    });
  }
  if (*c_sphere) {
    return with_genset([&](GensetPtr& gs, CapsPtr& caps) {
      StringOut out;
      st = adlab_sphere(session.get(), gs.get(), arg_h, arg_window, caps.get(),
                        &out.s);
      if (st != ADLAB_OK) return fail_with(st);
      std::cout << json::parse(out.str()).dump(2) << "\n";
      return 0;
    });
  }
  if (*c_lambda) {
    return with_genset([&](GensetPtr& gs, CapsPtr& caps) {
      StringOut out;
      st = adlab_lambda(session.get(), gs.get(), arg_h, caps.get(), arg_nmax,
                        arg_dir.empty() ? nullptr : arg_dir.c_str(), &out.s);
      if (st != ADLAB_OK) return fail_with(st);
      json bundle = json::parse(out.str());
      if (g.csv)
        return emit_length_bounds(bundle.at("payload").at("evidence"), true);
      std::cout << bundle.dump(2) << "\n";
      return 0;
    });
  }
  if (*c_table) {
    return with_genset([&](GensetPtr& gs, CapsPtr& caps) {
      StringOut out;
      st = adlab_exclusion_table(session.get(), gs.get(), arg_h, arg_range,
                                 caps.get(), &out.s);
      if (st != ADLAB_OK) return fail_with(st);
      return emit_length_bounds(json::parse(out.str()), g.csv);
    });
  }
  if (*c_delta) {
    StringOut out;
    st = adlab_delta(arg_delta_n, &out.s);
    if (st != ADLAB_OK) return fail_with(st);
    std::cout << json::parse(out.str()).dump(2) << "\n";
    return 0;
  }
  if (*c_dsearch) {
    StringOut out;
    st = adlab_delta_search(arg_maxn, arg_top, &out.s);
    if (st != ADLAB_OK) return fail_with(st);
    std::cout << json::parse(out.str()).dump(2) << "\n";
    return 0;
  }
  if (*c_obstruct) {
    return with_genset([&](GensetPtr& gs, CapsPtr&) {
      StringOut out;
      st = adlab_find_obstruction(session.get(), gs.get(), arg_h, arg_maxn,
                                  arg_maxq, arg_maxmod, &out.s);
      if (st != ADLAB_OK) {
        if (out.s) std::cout << out.str() << "\n";
        return fail_with(st);
      }
      if (!arg_file.empty()) {
        std::ofstream f(arg_file);
        f << out.str() << "\n";
      }
      std::cout << out.str() << "\n";
      return 0;
    });
  }
  if (*c_verify) {
    bool all_valid = true;
    for (const std::string& path : arg_files) {
      StringOut out;
      st = adlab_verify_file(path.c_str(), &out.s);
      if (st != ADLAB_OK) return fail_with(st);
      json verdict = json::parse(out.str());
      std::cout << path << ": "
                << (verdict.at("valid").get<bool>() ? "VALID" : "INVALID")
                << "\n";
      if (!verdict.at("valid").get<bool>()) {
        all_valid = false;
        for (const auto& c : verdict.at("checks")) {
          if (!c.at("pass").get<bool>())
            std::cout << "  failed: " << c.at("name").get<std::string>()
                      << " (" << c.at("detail").get<std::string>() << ")\n";
        }
      }
    }
    return all_valid ? 0 : 1;
  }
  if (*c_cache && *c_gc) {
    StringOut out;
    st = adlab_cache_gc(session.get(), &out.s);
    if (st != ADLAB_OK) return fail_with(st);
    std::cout << out.str() << "\n";
    return 0;
  }
  if (*c_repr) {
    return with_genset([&](GensetPtr& gs, CapsPtr& caps) {
      StringOut out;
      st = adlab_is_representable(session.get(), gs.get(), arg_n.c_str(),
                                  arg_h, caps.get(), &out.s);
      if (st != ADLAB_OK) return fail_with(st);
      std::cout << json::parse(out.str()).dump(2) << "\n";
      if (!arg_record.empty()) {
        StringOut rec;
        st = adlab_representable_record(session.get(), gs.get(), arg_n.c_str(),
                                        arg_h, caps.get(), &rec.s);
        if (st != ADLAB_OK) return fail_with(st);
        std::ofstream f(arg_record);
        if (!f) {
          std::cerr << "error: cannot write " << arg_record << "\n";
          return 1;
        }
        f << rec.str() << "\n";
      }
      return 0;
    });
  }
  std::cerr << "error: no subcommand\n";
  return 2;
}
