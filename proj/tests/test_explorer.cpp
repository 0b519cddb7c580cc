#include "support/build.hpp"
#include "support/corpus.hpp"
#include "tazone/batch.hpp"
#include "tazone/explorer.hpp"
#include "tazone/simulate.hpp"

#include <doctest.h>

using namespace tazone;
using namespace tazone::test;

namespace {

using DbmExplorer = Explorer<DbmBackend>;

// Abstract zone graph of the train network from (Far, Up, u0) under the
// default options (dbm, dfs, inclusion, extrapolation).
constexpr std::size_t kTrainStoredZones = 10;

DbmExplorer explorer_for(const Network& net, bool extrapolate = true) {
  return DbmExplorer(net, max_constants(net), extrapolate);
}

std::vector<std::string> label_names(const Network& net, const std::vector<LabelId>& labels) {
  std::vector<std::string> out;
  for (auto l : labels) out.push_back(net.name_of(l));
  return out;
}

}  // namespace

TEST_CASE("init_zone") {
  const Network net = train();
  const auto ex = explorer_for(net);
  const auto far = ex.init_zone({locations(net, {"Far", "Up", "u0"}), {}});
  REQUIRE(far);
  CHECK(far->zone == Dbm::universal(3));

  CHECK(!ex.init_zone({locations(net, {"Near", "Up", "u0"}), conj({atom(x0, Greater, 7)})}));

  const auto near = ex.init_zone({locations(net, {"Near", "Up", "u0"}), {}});
  REQUIRE(near);
  CHECK(near->zone == Dbm::from_constraint(conj({atom(x0, LessEq, 5)}), 3));
}

TEST_CASE("successors follow the synchronization rule") {
  const Network net = train();
  const auto ex = explorer_for(net);
  const auto start = *ex.init_zone({locations(net, {"Far", "Up", "u0"}), {}});

  // app synchronizes train and controller; lower and exit are blocked.
  const auto succ = ex.successors(start);
  REQUIRE(succ.size() == 1);
  CHECK(net.name_of(succ[0].label) == "app");
  CHECK(succ[0].state.locations == locations(net, {"Near", "Up", "u1"}));
  CHECK(succ[0].state.zone == Dbm::from_constraint(conj({atom(x0, Equal, 0), atom(x2, Equal, 0)}), 3));

  // From (Near, Up, u1) the only move is lower at Z = 1, which resets Y.
  const auto after_app = ex.successors(succ[0].state);
  REQUIRE(after_app.size() == 1);
  CHECK(net.name_of(after_app[0].label) == "lower");
  CHECK(after_app[0].state.locations == locations(net, {"Near", "t1", "u0"}));
  CHECK(after_app[0].state.zone ==
        Dbm::from_constraint(conj({atom(x0, Equal, 1), atom(x1, Equal, 0), atom(x2, Equal, 1)}), 3));
}

TEST_CASE("a listener without a matching transition blocks the label") {
  const auto net = parse_spec(
      "specification s Clocks nil States A B C D nil Labels a nil Automata "
      "( Locations A B nil Labels a nil Invariants A : true B : true nil Transitions A , a : true, nil, B . nil ) . "
      "( Locations C D nil Labels a nil Invariants C : true D : true nil Transitions D , a : true, nil, C . nil ) . "
      "nil end");
  REQUIRE(net);
  const auto ex = explorer_for(*net);
  CHECK(ex.successors(*ex.init_zone({locations(*net, {"A", "C"}), {}})).empty());
  const auto both = ex.successors(*ex.init_zone({locations(*net, {"A", "D"}), {}}));
  REQUIRE(both.size() == 1);
  CHECK(both[0].state.locations == locations(*net, {"B", "C"}));
}

TEST_CASE("transition combinations are enumerated in declaration order") {
  const auto net = parse_spec(
      "specification s Clocks nil States A B1 B2 C D1 D2 nil Labels a nil Automata "
      "( Locations A B1 B2 nil Labels a nil Invariants A : true B1 : true B2 : true nil "
      "  Transitions A , a : true, nil, B1 . A , a : true, nil, B2 . nil ) . "
      "( Locations C D1 D2 nil Labels a nil Invariants C : true D1 : true D2 : true nil "
      "  Transitions C , a : true, nil, D1 . C , a : true, nil, D2 . nil ) . "
      "nil end");
  REQUIRE(net);
  const auto ex = explorer_for(*net);
  const auto succ = ex.successors(*ex.init_zone({locations(*net, {"A", "C"}), {}}));
  REQUIRE(succ.size() == 4);
  CHECK(succ[0].state.locations == locations(*net, {"B1", "D1"}));
  CHECK(succ[1].state.locations == locations(*net, {"B1", "D2"}));
  CHECK(succ[2].state.locations == locations(*net, {"B2", "D1"}));
  CHECK(succ[3].state.locations == locations(*net, {"B2", "D2"}));
}

TEST_CASE("is_goal") {
  const Network net = train();
  const auto ex = explorer_for(net);
  const auto in = *ex.init_zone({locations(net, {"In", "Down", "u0"}), {}});
  CHECK(ex.is_goal(in, {locations(net, {"In", "Down", "u0"}), {}}));
  CHECK(!ex.is_goal(in, {locations(net, {"In", "Up", "u0"}), {}}));
  const auto near = *ex.init_zone({locations(net, {"Near", "Up", "u1"}), {}});
  CHECK(!ex.is_goal(near, {locations(net, {"Near", "Up", "u1"}), conj({atom(x0, Greater, 7)})}));
  // the target may be met after waiting: X = 0 now, X = 3 later
  const DbmExplorer::State zero{locations(net, {"Near", "Up", "u0"}), Dbm::from_constraint(conj({atom(x0, Equal, 0)}), 3)};
  CHECK(ex.is_goal(zero, {zero.locations, conj({atom(x0, Equal, 3)})}));
}

TEST_CASE("train queries under every configuration") {
  const Network net = train();
  const Query reach = query(net, kReachQuery);
  const Query unreach = query(net, kUnreachQuery);
  auto configs = configuration_matrix();
  configs.push_back(SearchOptions::faithful());
  configs.push_back(SearchOptions::faithful({BackendKind::Formula, SearchOrder::Bfs}));
  for (const auto& o : configs) {
    CAPTURE(to_string(o.backend));
    CAPTURE(to_string(o.order));
    CAPTURE(to_string(o.subsumption));
    const auto r = explore(net, reach, o);
    CHECK(r.verdict == Verdict::True);
    CHECK(replay_witness(net, reach, r.witness, o.backend, o.extrapolate));
    CHECK(explore(net, unreach, o).verdict == Verdict::False);
  }
  CHECK(explore(net, query(net, "go(Far.Up.u0.nil/true, Far.Up.u0.nil/true)"), {}).verdict == Verdict::True);
}

TEST_CASE("the literal guard makes the crossing unreachable") {
  const Network net = train_literal();
  CHECK(explore(net, query(net, kReachQuery), {}).verdict == Verdict::False);
  CHECK(explore(net, query(net, kUnreachQuery), {}).verdict == Verdict::False);
}

TEST_CASE("witnesses") {
  const Network net = train();
  const Query reach = query(net, kReachQuery);
  const auto r = explore(net, reach, {});
  REQUIRE(r.verdict == Verdict::True);
  const auto names = label_names(net, r.witness);
  REQUIRE(names.size() >= 4);
  CHECK(names.front() == "app");
  CHECK(names.back() == "enter");
  CHECK(std::find(names.begin(), names.end(), "lower") != names.end());
  CHECK(std::find(names.begin(), names.end(), "down") != names.end());

  // deterministic
  CHECK(explore(net, reach, {}).witness == r.witness);

  const auto here = explore(net, query(net, "go(Far.Up.u0.nil/true, Far.Up.u0.nil/true)"), {});
  CHECK(here.verdict == Verdict::True);
  CHECK(here.witness.empty());

  // a wrong label sequence does not replay
  std::vector<LabelId> wrong = r.witness;
  wrong.pop_back();
  CHECK(!replay_witness(net, reach, wrong, BackendKind::Dbm));
}

TEST_CASE("extrapolation makes the divergence loop terminate") {
  const Network net = load_network("divergence.ta");
  const Query q = query(net, "go(Loop.nil/x=0 ^ y=0 ^ true, Bad.nil/true)");
  CHECK(max_constants(net, &q) == std::vector<std::int64_t>{1, 0});

  const auto bounded = explore(net, q, {});
  CHECK(bounded.verdict == Verdict::False);
  CHECK(bounded.stats.stored == 2);

  SearchOptions faithful = SearchOptions::faithful();
  faithful.max_zones = 500;
  const auto runaway = explore(net, q, faithful);
  CHECK(runaway.verdict == Verdict::Inconclusive);
  CHECK(runaway.stats.stored > 500);

  SearchOptions timed = SearchOptions::faithful();
  timed.max_seconds = 0.05;
  CHECK(explore(net, q, timed).verdict == Verdict::Inconclusive);
}

TEST_CASE("stored-zone count on the train network") {
  const Network net = train();
  const Query unreach = query(net, kUnreachQuery);
  // exhaustive searches store the whole abstract zone graph
  const auto dfs = explore(net, unreach, {});
  CHECK(dfs.stats.stored == kTrainStoredZones);
  CHECK(dfs.stats.popped == dfs.stats.stored);
  SearchOptions eq;
  eq.subsumption = Subsumption::Equal;
  CHECK(explore(net, unreach, eq).stats.stored >= dfs.stats.stored);
}

TEST_CASE("concrete successors lie inside symbolic successors") {
  const Network net = train();
  const Network doubled = rescale(net, 2);  // half-unit grid points become integral
  const DbmExplorer ex(doubled, max_constants(doubled), false);
  const LocatedConstraint source{locations(net, {"Far", "Up", "u0"}), {}};
  const auto oracle = sim_reach_oracle(net, source, 15, Rational(1, 2), 2'000'000, 53);
  REQUIRE(oracle.samples.size() > 20);

  std::size_t checked = 0;
  for (const auto& s : oracle.samples) {
    ClockConstraint point;
    ClockValuation twice;
    for (std::uint32_t c = 0; c < net.clock_count(); ++c) {
      point.atoms.push_back(atom(ClockId{c}, Equal, s.clocks[c] * 2));
      twice.push_back(s.clocks[c] * 2);
    }
    const DbmExplorer::State state{s.locations, Dbm::from_constraint(point, net.clock_count())};
    const auto symbolic = ex.successors(state);
    for (int half = 0; half <= 6; ++half) {
      const auto waited = sim_delay(net, s.locations, s.clocks, Rational(half, 2));
      if (!waited) break;
      for (std::uint32_t l = 0; l < net.labels.size(); ++l)
        for (const auto& choice : transition_choices(net, s.locations, LabelId{l})) {
          const auto next = sim_action(net, s.locations, *waited, LabelId{l}, choice);
          if (!next) continue;
          ClockValuation v2;
          for (const auto& c : next->clocks) v2.push_back(c * 2);
          const bool covered = std::any_of(symbolic.begin(), symbolic.end(), [&](const auto& succ) {
            return succ.label == LabelId{l} && succ.state.locations == next->locations && succ.state.zone.contains(v2);
          });
          CHECK(covered);
          ++checked;
        }
    }
  }
  CHECK(checked > 20);
}
