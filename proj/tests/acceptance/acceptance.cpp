// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure. Runs offline against the mock backend and a local stub provider.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "support/meshes.hpp"
#include "support/oracles.hpp"
#include "support/stub_provider.hpp"
#include "xrwm/xrwm.hpp"

using namespace xrwm;
using nlohmann::json;

namespace {

const std::string kData = XRWM_DATA_DIR;
const std::string kGolden = XRWM_GOLDEN_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Session demo_session(std::string id = "session-1") {
  return create_session(std::move(id), load_scene(kData + "/demo_room.json"),
                        parse_windows(detail::read_json_file(kData + "/demo_windows.json")));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::set<std::set<std::uint32_t>> as_sets(const std::vector<FlatSurface>& surfaces) {
  std::set<std::set<std::uint32_t>> out;
  for (const auto& s : surfaces) out.insert({s.face_indices.begin(), s.face_indices.end()});
  return out;
}

// --- 1 -------------------------------------------------------------------
Outcome surface_extraction() {
  Outcome o;
  double slowest = 0.0;
  auto timed = [&](const Scene& scene, const ExtractionParams& p) {
    auto t0 = std::chrono::steady_clock::now();
    auto out = extract_planar_regions(scene, build_adjacency(scene), p);
    slowest = std::max(slowest, seconds_since(t0));
    return out;
  };

  auto cube = fixtures::unit_cube();
  auto faces = timed(cube, {});
  o.check(faces.size() == 6, "cube: expected 6 surfaces, got " + std::to_string(faces.size()));
  for (const auto& s : faces) {
    o.check(std::abs(s.area - 1.0) <= 1e-6, "cube: area " + fmt("%.9f", s.area));
    const Vec3 n = s.basis.normal.cwiseAbs();
    int axis;
    n.maxCoeff(&axis);
    o.check(std::abs(n[axis] - 1.0) <= 1e-6 && (n.sum() - n[axis]) <= 1e-6, "cube: normal not axis-aligned");
  }

  auto grid = fixtures::flat_grid(10);
  o.check(grid.faces.size() == 200, "grid does not have 200 faces");
  o.check(timed(grid, {}).size() == 1, "200-face plane did not give exactly 1 surface");

  // brute-force oracle on random bumpy terrains and the cube, <= 500 faces
  std::mt19937 rng(2024);
  std::vector<Scene> scenes{cube, grid};
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 11);  // up to 2*15^2 = 450 faces
    std::uniform_real_distribution<double> h(-0.2, 0.2);
    std::vector<double> heights((n + 1) * (n + 1));
    for (auto& x : heights) x = rng() % 3 == 0 ? 0.0 : h(rng);
    std::vector<Vec3> v;
    std::vector<Face> f;
    fixtures::append_grid(v, f, n, 0.4, 0, 0, [&](int i, int j) { return heights[j * (n + 1) + i]; });
    scenes.push_back(fixtures::make_scene("terrain-" + std::to_string(trial), v, f, "floor"));
  }
  int compared = 0;
  for (const auto& scene : scenes) {
    if (scene.faces.size() > 500) continue;
    for (double thr : {5.0, 15.0, 30.0}) {
      for (double min_area : {0.0, 0.09}) {
        std::set<std::set<std::uint32_t>> ref;
        for (auto& g : oracle::group_faces(scene, thr, min_area)) ref.insert(g);
        o.check(as_sets(timed(scene, {thr, min_area})) == ref,
                "oracle mismatch on " + scene.scene_id + " at " + fmt("%.0f deg", thr));
        ++compared;
      }
    }
  }
  auto room = load_scene(kData + "/demo_room.json");
  timed(room, {});
  o.check(slowest < 1.0, "extraction took " + fmt("%.3f s", slowest));
  if (o.pass)
    o.detail = "cube 6x1.0 m2, grid 1 surface, " + std::to_string(compared) + " oracle comparisons, slowest run " +
               fmt("%.4f s", slowest);
  return o;
}

// --- 2 -------------------------------------------------------------------
Outcome pca_fidelity() {
  Outcome o;
  std::mt19937 rng(7);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> in_plane(-1.5, 1.5), noise(-0.001, 0.001);
  double worst_deg = 0.0, worst_ortho = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Vec3 n(gauss(rng), gauss(rng), gauss(rng));
    n.normalize();
    Vec3 a = n.unitOrthogonal(), b = n.cross(a);
    Vec3 c(gauss(rng), gauss(rng), gauss(rng));
    std::vector<Vec3> pts;
    for (int i = 0; i < 1000; ++i) pts.push_back(c + in_plane(rng) * a + 0.5 * in_plane(rng) * b + noise(rng) * n);
    auto basis = fit_plane_pca(pts);
    double cosang = std::min(1.0, std::abs(basis.normal.dot(n)));
    worst_deg = std::max(worst_deg, std::acos(cosang) * 180.0 / M_PI);
    const Vec3 axes[3] = {basis.u_axis, basis.v_axis, basis.normal};
    for (int i = 0; i < 3; ++i) {
      worst_ortho = std::max(worst_ortho, std::abs(axes[i].norm() - 1.0));
      for (int j = i + 1; j < 3; ++j) worst_ortho = std::max(worst_ortho, std::abs(axes[i].dot(axes[j])));
    }
  }
  o.check(worst_deg <= 0.5, "normal error " + fmt("%.4f deg", worst_deg));
  o.check(worst_ortho <= 1e-9, "orthonormality error " + fmt("%.3e", worst_ortho));
  if (o.pass) o.detail = "worst normal error " + fmt("%.4f deg", worst_deg) + ", orthonormality " + fmt("%.2e", worst_ortho);
  return o;
}

// --- 3 -------------------------------------------------------------------
FlatSurface facing_surface(const Vec3& centroid, const Vec3& normal) {
  FlatSurface s;
  s.id = "probe";
  s.basis.centroid = centroid;
  s.basis.normal = normal.normalized();
  return s;
}

Outcome visibility_properties() {
  Outcome o;
  std::mt19937 rng(3);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> pos(-5, 5);
  double worst_oracle = 0.0;
  for (int i = 0; i < 10000; ++i) {
    Vec3 head(pos(rng), pos(rng), pos(rng)), c(pos(rng), pos(rng), pos(rng));
    if ((c - head).norm() < 1e-6) continue;
    Vec3 fwd(gauss(rng), gauss(rng), gauss(rng)), nrm(gauss(rng), gauss(rng), gauss(rng));
    auto h = HeadPose::make(head, fwd, 0.0);
    auto s = facing_surface(c, nrm);
    double v = visibility_score(h, s);
    o.check(v >= 0.0 && v <= 1.0, "score out of range: " + fmt("%.6f", v));
    worst_oracle = std::max(worst_oracle, std::abs(v - oracle::visibility(head, h.forward, c, s.basis.normal)));
  }
  o.check(worst_oracle <= 1e-9, "disagrees with angle oracle by " + fmt("%.3e", worst_oracle));

  auto head = HeadPose::make({0, 0, 0}, {0, 0, -1}, 0.0);
  double ahead = visibility_score(head, facing_surface({0, 0, -3}, {0, 0, 1}));
  double behind = visibility_score(head, facing_surface({0, 0, 3}, {0, 0, -1}));
  const double t = M_PI / 3;
  Vec3 at(std::sin(t) * 2, 0, -std::cos(t) * 2);
  double off = visibility_score(head, facing_surface(at, -at));
  o.check(std::abs(ahead - 1.0) <= 1e-9, "dead-ahead " + fmt("%.12f", ahead));
  o.check(behind == 0.0, "behind " + fmt("%.12f", behind));
  o.check(std::abs(off - 0.5) <= 1e-6, "60 deg off-axis " + fmt("%.9f", off));
  if (o.pass)
    o.detail = "10000 random pairs in [0,1], ahead " + fmt("%.12f", ahead) + ", behind 0, 60 deg " + fmt("%.9f", off);
  return o;
}

// --- 4 -------------------------------------------------------------------
constexpr const char* kTripPlan = R"({"response": "Actions generated to place Google Maps, Notes, and Calendar on visible surfaces for trip planning.",
  "actions": [
    ["place", "Google Maps", "Table"],
    ["place", "Notes", "Desk"],
    ["place", "Calendar", "Wall"]
  ]})";

Outcome schema_fidelity() {
  Outcome o;
  FlatSurface cab;
  cab.id = "7409038c";
  cab.name = "cabinet-1";
  cab.semantic = "cabinet";
  cab.extent_u = 5.0;
  cab.extent_v = 7.0;
  cab.area = 35.0;
  auto ws = make_workspace({cab}, {{"e5f3b127", {200, 200}, kNoLocation, "Google Maps"}});
  AttentionState att;
  att = record_pointing(att, {"e5f3b127", 1.5, 0.0});
  auto prompt = build_prompt("put that there", {surface_descriptor(cab, 0.8, ws)}, ws, att);
  const auto text = prompt.user_message();
  for (const char* key : {"\"userPointingEvents\"", "\"hoverDuration\"", "\"windows\"", "\"flat_surfaces\"",
                          "\"visibility\"", "\"semantic\"", "\"current_windows\""})
    o.check(text.find(key) != std::string::npos, std::string("missing field ") + key);
  o.check(text.find("\"size\":\"200x200\"") != std::string::npos, "window size string");
  o.check(text.find("\"size\":\"500x700\"") != std::string::npos, "surface size string");
  const auto& p = prompt.input_payload;
  o.check(p["flat_surfaces"][0] == json::parse(R"({"id":"7409038c","size":"500x700","visibility":0.8,
            "semantic":"cabinet","current_windows":[]})"), "surface descriptor");
  o.check(p["windows"][0] == json::parse(R"({"id":"e5f3b127","size":"200x200","location":"none","name":"Google Maps"})"),
          "window descriptor");
  o.check(p["userPointingEvents"][0] == json::parse(R"({"identifier":"e5f3b127","hoverDuration":1.5})"), "pointing event");

  auto plan = parse_plan(kTripPlan);
  o.check(plan.actions.size() == 3, "trip plan action count");
  for (const auto& a : plan.actions) o.check(a.verb == Verb::place, "trip plan verb");
  if (o.pass) o.detail = "all field names and size strings present; trip plan parses to 3 place actions";
  return o;
}

// --- 5 -------------------------------------------------------------------
std::string best_visible(const Session& s, const std::string& exclude) {
  std::string best;
  double best_v = -1.0;
  for (const auto& surf : s.surfaces) {
    if (surf.id == exclude) continue;
    double v = std::round(oracle::visibility(s.attention.head.position, s.attention.head.forward, surf.basis.centroid,
                                             surf.basis.normal) * 1e4) / 1e4;
    if (v > best_v) best_v = v, best = surf.id;
  }
  return best;
}

double rounded_vis(const Session& s, const std::string& surface_id) {
  const auto& surf = s.workspace.surfaces.at(surface_id);
  return std::round(oracle::visibility(s.attention.head.position, s.attention.head.forward, surf.basis.centroid,
                                       surf.basis.normal) * 1e4) / 1e4;
}

Outcome mock_behaviour() {
  Outcome o;
  MockResolver mock;
  const auto base = demo_session();

  // (a) goal table
  const std::vector<std::pair<std::string, std::string>> goals{{"I need to send a message", "w-chat"},
                                                              {"I need some location's information", "w-maps"},
                                                              {"I need to finish coding my application", "w-vs"}};
  const std::vector<HeadPose> heads{HeadPose::make({0, 1.6, 0.5}, {0, -0.3, -1}, 1.0),
                                    HeadPose::make({0.5, 1.6, 0}, {1, -0.2, 0}, 1.0),
                                    HeadPose::make({-1, 1.2, 0.5}, {0.4, -0.8, -0.2}, 1.0)};
  for (const auto& head : heads)
    for (const auto& [text, window] : goals) {
      auto s = base;
      update_head(s, head);
      auto out = handle_request(s, mock, text, 2.0);
      o.check(out.applied && out.actions.size() == 1 && out.actions[0].window_ref == window,
              "goal '" + text + "' did not place " + window);
      if (!out.actions.empty())
        o.check(rounded_vis(s, out.actions[0].surface_ref) == rounded_vis(s, best_visible(s, kNoLocation)),
                "goal '" + text + "' not on a highest-visibility surface");
    }

  // (b) every window x every surface
  int deictic = 0;
  for (const auto& [wid, w] : base.workspace.windows)
    for (const auto& surf : base.surfaces) {
      auto s = base;
      add_pointing(s, {wid, 1.5, 1.0});
      add_pointing(s, {surf.id, 1.2, 2.0});
      auto out = handle_request(s, mock, "put that there", 3.0);
      o.check(out.applied && s.workspace.windows.at(wid).location == surf.id,
              "put that there: " + wid + " not on " + surf.id);
      ++deictic;
    }

  // (c) exclusion over randomized sessions, requests and pointing
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1, 1), hover(0.0, 2.0);
  const std::vector<std::string> requests{"put that there", "move this here", "I need some location's information",
                                          "send a message", "finish coding", "move the Chat over there",
                                          "images for a presentation", "put Slides on the table"};
  std::vector<std::string> window_ids, surface_ids;
  for (const auto& [id, w] : base.workspace.windows) window_ids.push_back(id);
  for (const auto& s : base.surfaces) surface_ids.push_back(s.id);
  int with_actions = 0, goal_moves = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto s = base;
    for (const auto& wid : window_ids)
      if (rng() % 2) s.workspace = place_window(s.workspace, wid, s.workspace.surfaces.at(surface_ids[rng() % surface_ids.size()]));
    update_head(s, HeadPose::make({u(rng) * 1.5, 1.2 + 0.5 * u(rng), u(rng)}, {u(rng), u(rng) * 0.5, u(rng) - 0.1}, 1.0));
    for (int k = 0, n = static_cast<int>(rng() % 5); k < n; ++k) {
      const bool on_window = rng() % 2;
      const auto& id = on_window ? window_ids[rng() % window_ids.size()] : surface_ids[rng() % surface_ids.size()];
      add_pointing(s, {id, hover(rng), 1.0 + k * 0.1});
    }
    const auto& request = requests[rng() % requests.size()];
    auto prompt = build_prompt(request, s.workspace, s.attention);
    auto plan = mock.plan_for(prompt);
    if (!plan.actions.empty()) ++with_actions;
    // a goal request must still relocate an already placed window
    if (request == "I need some location's information") {
      ++goal_moves;
      o.check(plan.actions.size() == 1 && plan.actions[0].window_ref == "w-maps",
              "trial " + std::to_string(trial) + ": Google Maps was not relocated");
    }
    for (const auto& a : plan.actions)
      if (a.verb == Verb::place)
        o.check(s.workspace.windows.at(a.window_ref).location != a.surface_ref,
                "trial " + std::to_string(trial) + ": placed " + a.window_ref + " onto its current surface");
  }
  o.check(with_actions >= 500, "exclusion property mostly vacuous");
  if (o.pass)
    o.detail = "9 goal cases, " + std::to_string(deictic) + " deictic cases, 1000 exclusion cases (" +
               std::to_string(with_actions) + " with actions, " + std::to_string(goal_moves) + " goal relocations)";
  return o;
}

// --- 6 -------------------------------------------------------------------
Outcome one_to_many() {
  Outcome o;
  MockResolver mock;
  auto s = demo_session();
  update_head(s, HeadPose::make({0, 1.6, 0.5}, {0, -0.3, -1}, 1.0));
  auto out = handle_request(s, mock, "I need to find images for a presentation", 2.0);
  int places = 0;
  for (const auto& a : out.actions) places += a.verb == Verb::place;
  o.check(places >= 2, "only " + std::to_string(places) + " place actions");
  o.check(out.applied, "plan not applied");
  for (const auto& a : out.actions)
    o.check(s.workspace.windows.at(a.window_ref).location == a.surface_ref, "action not reflected in workspace");
  o.check(to_json(fold_event_log(s.initial_workspace, s.event_log)).dump() == to_json(s.workspace).dump(),
          "event log does not reproduce workspace");

  // same plan with a failing tail: nothing applies
  auto fresh = demo_session();
  update_head(fresh, HeadPose::make({0, 1.6, 0.5}, {0, -0.3, -1}, 1.0));
  auto plan = mock.plan_for(build_prompt("I need to find images for a presentation", fresh.workspace, fresh.attention));
  plan.actions.push_back({Verb::remove, "w-chat", plan.actions.front().surface_ref});
  const auto before = to_json(fresh.workspace).dump();
  bool threw = false;
  try {
    execute_plan(validate_plan(plan, fresh.workspace), fresh.workspace);
  } catch (const Error& e) {
    threw = e.kind() == ErrorKind::MismatchedSurface;
  }
  o.check(threw && to_json(fresh.workspace).dump() == before, "partial plan changed state");
  if (o.pass) o.detail = std::to_string(places) + " place actions applied together; failing plan left state unchanged";
  return o;
}

// --- 7 -------------------------------------------------------------------
Outcome workspace_machine() {
  Outcome o;
  auto rect = [](std::string id, double w, double h) {
    FlatSurface s;
    s.id = s.name = std::move(id);
    s.semantic = "wall";
    s.extent_u = w;
    s.extent_v = h;
    s.area = w * h;
    return s;
  };
  std::vector<FlatSurface> surfaces{rect("s0", 4, 2.6), rect("s1", 1.2, 0.8), rect("s2", 3, 2.6), rect("s3", 0.4, 0.3)};
  std::vector<WindowDescriptor> windows;
  for (int i = 0; i < 7; ++i)
    windows.push_back({"w" + std::to_string(i), {200 + 150 * i, 200 + 70 * (i % 3)}, kNoLocation, "App " + std::to_string(i)});
  const auto initial = make_workspace(surfaces, windows);

  std::mt19937 rng(77);
  long ops = 0, rejected = 0, identity_checks = 0;
  auto layout_ok = [&](const Workspace& ws) {
    for (const auto& [sid, slots] : ws.layout) {
      const auto& surf = ws.surfaces.at(sid);
      for (std::size_t i = 0; i < slots.size(); ++i) {
        const auto& a = slots[i];
        if (a.u_offset < -1e-12 || a.v_offset < -1e-12 || a.u_offset + a.display_w > surf.extent_u + 1e-9 ||
            a.v_offset + a.display_h > surf.extent_v + 1e-9)
          return false;
        for (std::size_t j = i + 1; j < slots.size(); ++j)
          if (oracle::slots_overlap(a, slots[j])) return false;
      }
    }
    return true;
  };
  for (int seq = 0; seq < 10000 && o.pass; ++seq) {
    Workspace ws = initial;
    for (int step = 0; step < 12; ++step) {
      const auto& wid = windows[rng() % windows.size()].id;
      const auto& surf = surfaces[rng() % surfaces.size()];
      const auto before = to_json(ws).dump();
      try {
        if (rng() % 3) {
          auto next = place_window(ws, wid, surf);
          if (ws.windows.at(wid).location == kNoLocation) {
            ++identity_checks;
            o.check(to_json(remove_window(next, wid, surf)).dump() == before, "remove did not undo place");
          }
          ws = std::move(next);
        } else {
          ws = remove_window(ws, wid, surf);
        }
        ++ops;
      } catch (const Error&) {
        ++rejected;
        o.check(to_json(ws).dump() == before, "rejected op changed state");
      }
      o.check(ws.consistent(), "placements and window locations disagree");
      o.check(layout_ok(ws), "slots overlap or leave the surface");
    }
    // an invalid plan (unknown surface at the end) leaves state untouched
    const auto before = to_json(ws).dump();
    ActionPlan bad{"", {{Verb::place, windows[rng() % windows.size()].id, "s0"}, {Verb::place, "w1", "nowhere"}}};
    try {
      execute_plan(validate_plan(bad, ws), ws);
      o.check(false, "invalid plan accepted");
    } catch (const Error&) {
    }
    o.check(to_json(ws).dump() == before, "invalid plan changed state");
  }
  if (o.pass)
    o.detail = "10000 sequences, " + std::to_string(ops) + " ops applied, " + std::to_string(rejected) + " rejected, " +
               std::to_string(identity_checks) + " place/remove identity checks";
  return o;
}

// --- 8 -------------------------------------------------------------------
Outcome replay_determinism() {
  Outcome o;
  auto run = [] {
    auto s = demo_session("replay");
    MockResolver mock;
    return replay_trace(slurp(kData + "/traces/put_that_there.json"), s, mock).dump(2) + "\n";
  };
  const auto a = run(), b = run();
  const auto golden = slurp(kGolden + "/put_that_there.transcript.json");
  o.check(a == b, "two replays differ");
  o.check(!golden.empty(), "golden transcript missing");
  o.check(a == golden, "replay differs from golden transcript");
  if (o.pass) o.detail = "transcript of " + std::to_string(a.size()) + " bytes identical across runs and to golden";
  return o;
}

// --- 9 -------------------------------------------------------------------
Outcome remote_contract() {
  Outcome o;
  const std::string good = R"({"response":"ok","actions":[["place","w-maps","d493b13eac3bf532"]]})";
  PromptDocument prompt{kSystemPromptTemplate,
                        {{"user_request", "show me the map"},
                         {"flat_surfaces", json::array()},
                         {"windows", json::array()},
                         {"userPointingEvents", json::array()}}};
  auto config = [](const fixtures::StubProvider& stub) {
    RemoteConfig c;
    c.endpoint = stub.endpoint();
    c.api_key = "acceptance";
    c.timeout_s = 5;
    return c;
  };
  {
    fixtures::StubProvider stub;
    stub.push({200, "```json\n" + good + "\n```"});
    RemoteResolver r(config(stub));
    o.check(parse_plan(r.resolve(prompt)).actions.size() == 1 && stub.requests().size() == 1, "fenced reply rejected");
  }
  {
    fixtures::StubProvider stub;
    stub.push({200, "not json at all"});
    stub.push({200, good});
    RemoteResolver r(config(stub));
    o.check(r.resolve(prompt) == good, "retry did not recover");
    o.check(stub.requests().size() == 2, "expected exactly one retry, saw " + std::to_string(stub.requests().size()));
  }
  {
    fixtures::StubProvider stub;
    stub.push({200, "bad one"});
    stub.push({200, "bad two"});
    stub.push({200, good});
    RemoteResolver r(config(stub));
    bool ok = false;
    try {
      r.resolve(prompt);
    } catch (const Error& e) {
      ok = e.kind() == ErrorKind::MalformedJson && e.details()["attempts"] == json::array({"bad one", "bad two"});
    }
    o.check(ok, "double-malformed exchange not reported as MalformedJson with both texts");
    o.check(stub.requests().size() == 2, "third request issued");

    // and the session records it without throwing
    fixtures::StubProvider stub2;
    stub2.push({200, "bad one"});
    stub2.push({200, "bad two"});
    RemoteResolver r2(config(stub2));
    auto s = demo_session();
    auto out = handle_request(s, r2, "show me the map", 1.0);
    const auto& rec = std::get<ResolutionRecord>(s.event_log.back().payload);
    o.check(!out.applied && out.errors.size() == 1 && rec.error["details"]["attempts"].size() == 2,
            "session did not log both raw texts");
  }
  if (o.pass) o.detail = "fence accepted, one corrective retry, MalformedJson carries both raw replies";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"surface extraction correctness", surface_extraction},
      {"PCA fidelity", pca_fidelity},
      {"visibility properties", visibility_properties},
      {"prompt and plan schema fidelity", schema_fidelity},
      {"mock resolver behaviour", mock_behaviour},
      {"one-to-many plans", one_to_many},
      {"workspace state machine", workspace_machine},
      {"end-to-end replay determinism", replay_determinism},
      {"remote backend contract", remote_contract},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("[%s] %zu. %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
