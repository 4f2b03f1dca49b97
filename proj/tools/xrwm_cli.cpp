// Command-line front end: surface extraction, relabeling, trace replay and
// the HTTP session service.

#include <csignal>
#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xrwm/xrwm.hpp"

namespace {

struct BackendOptions {
  std::string backend = "mock";
  std::string model = "gpt-4";
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  double timeout_s = 30.0;
  int retries = 1;
  std::string goals;
};

void add_backend_options(CLI::App* cmd, BackendOptions& o) {
  cmd->add_option("--backend", o.backend, "Resolver backend")->check(CLI::IsMember({"mock", "remote"}));
  cmd->add_option("--model", o.model, "Model name for the remote backend");
  cmd->add_option("--endpoint", o.endpoint, "Chat-completions URL for the remote backend");
  cmd->add_option("--timeout-s", o.timeout_s, "Remote request timeout in seconds");
  cmd->add_option("--retries", o.retries, "Corrective retries on malformed replies");
  cmd->add_option("--goals", o.goals, "Goal-mapping JSON for the mock backend")->check(CLI::ExistingFile);
}

xrwm::BackendFactory make_factory(const BackendOptions& o) {
  if (o.backend == "remote") {
    xrwm::RemoteConfig cfg;
    cfg.endpoint = o.endpoint;
    cfg.model = o.model;
    cfg.timeout_s = o.timeout_s;
    cfg.corrective_retries = o.retries;
    cfg = xrwm::RemoteConfig::from_env(cfg);
    xrwm::RemoteResolver probe(cfg);  // validate configuration up front
    return [cfg] { return std::make_shared<xrwm::RemoteResolver>(cfg); };
  }
  auto goals = o.goals.empty() ? xrwm::GoalTable::builtin()
                               : xrwm::GoalTable::from_json(xrwm::detail::read_json_file(o.goals));
  return [goals] { return std::make_shared<xrwm::MockResolver>(goals); };
}

xrwm::Vec3 parse_vec3(const std::string& text) {
  std::stringstream ss(text);
  std::vector<double> v;
  std::string part;
  while (std::getline(ss, part, ',')) v.push_back(std::stod(part));
  if (v.size() != 3) throw xrwm::Error(xrwm::ErrorKind::ParamError, "expected x,y,z but got '" + text + "'");
  return {v[0], v[1], v[2]};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text << "\n";
  else
    xrwm::detail::write_text_file(path, text + "\n");
}

xrwm::Scene load_scene_reporting(const std::string& path) {
  xrwm::SceneLoadStats stats;
  auto scene = xrwm::load_scene(path, &stats);
  if (stats.dropped_degenerate > 0)
    std::cerr << "warning: dropped " << stats.dropped_degenerate << " degenerate face(s) from " << path << "\n";
  return scene;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Task-centric XR window manager engine"};
  app.require_subcommand(1);

  // extract-surfaces
  std::string scene_path, out_path, head_pos, head_fwd;
  xrwm::ExtractionParams params;
  auto* extract = app.add_subcommand("extract-surfaces", "Extract flat surfaces from a labeled scene");
  extract->add_option("--scene", scene_path, "Scene JSON")->required()->check(CLI::ExistingFile);
  extract->add_option("--threshold-deg", params.angular_threshold_deg, "Coplanarity threshold in degrees");
  extract->add_option("--min-area", params.min_area_m2, "Minimum region area in m^2");
  extract->add_option("--out", out_path, "Output path ('-' for stdout)");
  extract->add_option("--head-pos", head_pos, "Head position x,y,z used for visibility");
  extract->add_option("--head-forward", head_fwd, "Head forward x,y,z used for visibility");

  // relabel
  std::string overrides_path;
  auto* relabel = app.add_subcommand("relabel", "Apply manual label overrides to a scene");
  relabel->add_option("--scene", scene_path, "Scene JSON")->required()->check(CLI::ExistingFile);
  relabel->add_option("--overrides", overrides_path, "Face-index -> label JSON")->required()->check(CLI::ExistingFile);
  relabel->add_option("--out", out_path, "Output path ('-' for stdout)");

  // replay
  std::string trace_path, windows_path;
  BackendOptions backend;
  xrwm::SessionConfig session_cfg;
  auto* replay = app.add_subcommand("replay", "Replay a recorded trace and write a transcript");
  replay->add_option("--trace", trace_path, "Trace JSON")->required()->check(CLI::ExistingFile);
  replay->add_option("--scene", scene_path, "Scene JSON")->required()->check(CLI::ExistingFile);
  replay->add_option("--windows", windows_path, "Windows JSON")->required()->check(CLI::ExistingFile);
  replay->add_option("--out", out_path, "Transcript path ('-' for stdout)");
  replay->add_option("--threshold-deg", session_cfg.extraction.angular_threshold_deg, "Coplanarity threshold");
  replay->add_option("--min-area", session_cfg.extraction.min_area_m2, "Minimum region area in m^2");
  replay->add_option("--min-hover", session_cfg.min_hover, "Pointing noise threshold in seconds");
  add_backend_options(replay, backend);

  // serve
  int port = 8080;
  std::string host = "127.0.0.1", ui_dir;
  auto* serve = app.add_subcommand("serve", "Run the HTTP session service");
  serve->add_option("--port", port, "Listen port");
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--ui-dir", ui_dir, "Static directory served at /")->check(CLI::ExistingDirectory);
  serve->add_option("--threshold-deg", session_cfg.extraction.angular_threshold_deg, "Coplanarity threshold");
  serve->add_option("--min-area", session_cfg.extraction.min_area_m2, "Minimum region area in m^2");
  serve->add_option("--min-hover", session_cfg.min_hover, "Pointing noise threshold in seconds");
  add_backend_options(serve, backend);

  CLI11_PARSE(app, argc, argv);

  try {
    if (extract->parsed()) {
      auto scene = load_scene_reporting(scene_path);
      auto surfaces = xrwm::extract_planar_regions(scene, xrwm::build_adjacency(scene), params);
      std::optional<xrwm::HeadPose> head;
      if (!head_pos.empty() || !head_fwd.empty())
        head = xrwm::HeadPose::make(parse_vec3(head_pos.empty() ? "0,0,0" : head_pos),
                                    parse_vec3(head_fwd.empty() ? "0,0,-1" : head_fwd), 0.0);
      nlohmann::json descriptors = nlohmann::json::array(), geometry = nlohmann::json::array();
      for (const auto& s : surfaces) {
        double vis = head ? xrwm::visibility_score(*head, s) : 0.0;
        descriptors.push_back(xrwm::surface_descriptor(s, vis, std::vector<std::string>{}));
        geometry.push_back(xrwm::surface_geometry_json(s));
      }
      write_output(out_path, nlohmann::json{{"scene_id", scene.scene_id},
                                            {"flat_surfaces", descriptors},
                                            {"geometry", geometry}}
                                 .dump(2));
      std::cerr << surfaces.size() << " surface(s) extracted\n";
    } else if (relabel->parsed()) {
      auto scene = load_scene_reporting(scene_path);
      auto overrides = xrwm::parse_label_overrides(xrwm::detail::read_json_file(overrides_path));
      write_output(out_path, xrwm::scene_to_json(xrwm::apply_labels(scene, overrides)).dump());
    } else if (replay->parsed()) {
      auto factory = make_factory(backend);
      auto resolver = factory();
      auto session = xrwm::create_session(
          "replay", load_scene_reporting(scene_path),
          xrwm::parse_windows(xrwm::detail::read_json_file(windows_path)), session_cfg);
      std::ifstream in(trace_path);
      std::stringstream buf;
      buf << in.rdbuf();
      auto transcript = xrwm::replay_trace(buf.str(), session, *resolver);
      write_output(out_path, transcript.dump(2));
    } else if (serve->parsed()) {
      xrwm::SessionRegistry registry(make_factory(backend), session_cfg);
      httplib::Server server;
      xrwm::register_routes(server, registry);
      if (!ui_dir.empty()) server.set_mount_point("/", ui_dir);
      std::cerr << "listening on http://" << host << ":" << port << " (backend " << backend.backend << ")\n";
      if (!server.listen(host, port)) {
        std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
        return 1;
      }
    }
  } catch (const xrwm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (!e.details().is_null()) std::cerr << e.details().dump(2) << "\n";
    return 2;
  }
  return 0;
}
