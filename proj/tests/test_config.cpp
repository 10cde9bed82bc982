// Copyright 2026 The regvqe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include "regvqe/config.hpp"

using namespace regvqe;

TEST_CASE("config: defaults fill every field") {
  const auto cfg = parse_config(R"({"hamiltonian": {"path": "data/h2.psum"}})", "/base");
  CHECK(cfg.sweep.hamiltonian_path == std::filesystem::path("/base/data/h2.psum"));
  CHECK(cfg.sweep.ansatz.kind == AnsatzKind::TwoLocal);
  CHECK(cfg.sweep.ansatz.reps == 4);
  CHECK(cfg.sweep.ansatz.entanglement == Entanglement::Linear);
  CHECK(cfg.lambda0 == 0.0);
  CHECK(cfg.schedule_kind == ScheduleKind::Cosine);
  CHECK(cfg.gradient_mode == GradientMode::ParameterShift);
  CHECK(cfg.sweep.pipeline.stage_a.max_iters == 15);
  CHECK(cfg.sweep.pipeline.stage_b.max_iters == 10);
  CHECK(cfg.sweep.pipeline.stage_a.grad_tolerance == 1e-2);
  CHECK(cfg.sweep.pipeline.eval_budget == 10000);
  CHECK(cfg.sweep.pipeline.schedule.t_a == 15);
  CHECK(cfg.sweep.lambda_grid.size() == 11);
  CHECK(cfg.sweep.lambda_grid[5] == 0.099);
  CHECK(cfg.sweep.paired_seeds);
  CHECK(cfg.sweep.workers == 0);  // unresolved until the CLI picks a count
}

TEST_CASE("config: explicit values override defaults") {
  const auto cfg = parse_config(R"({
    "hamiltonian": {"rfim": {"n_qubits": 10, "rng_seed": 3}},
    "ansatz": {"kind": "ry_layer"},
    "reg": {"lambda0": 0.05, "schedule": "constant"},
    "gradient": "finite_difference",
    "fd": {"step": 1e-6},
    "opt": {"method": "lbfgs", "max_iters_a": 200, "max_iters_b": 200, "gtol": 1e-3,
            "budget": 50000, "lbfgs_memory": 7},
    "sweep": {"lambda_grid": [0.0, 0.1], "n_seeds": 12, "seed_base": 99,
              "init_distribution": "uniform_0_2pi", "paired_seeds": false,
              "trajectory_seeds": 0, "workers": 3},
    "out_dir": "/tmp/regvqe_cfg_test"
  })",
                                "/base");
  CHECK(cfg.sweep.rfim->n_qubits == 10);
  CHECK(cfg.sweep.rfim->rng_seed == 3);
  CHECK(cfg.sweep.ansatz.kind == AnsatzKind::RyLayer);
  CHECK(cfg.lambda0 == 0.05);
  CHECK(cfg.schedule_kind == ScheduleKind::Constant);
  CHECK(cfg.gradient_mode == GradientMode::FiniteDifference);
  CHECK(cfg.fd_step == 1e-6);
  CHECK(cfg.sweep.pipeline.stage_a.method == OptMethod::LBFGS);
  CHECK(cfg.sweep.pipeline.stage_a.max_iters == 200);
  CHECK(cfg.sweep.pipeline.stage_a.lbfgs_memory == 7);
  CHECK(cfg.sweep.pipeline.schedule.t_a == 200);
  CHECK(cfg.sweep.n_seeds == 12);
  CHECK(!cfg.sweep.paired_seeds);
  CHECK(cfg.sweep.workers == 3);
  CHECK(cfg.sweep.out_dir == std::filesystem::path("/tmp/regvqe_cfg_test"));
}

TEST_CASE("config: resolved echo round-trips") {
  const auto cfg = parse_config(R"({
    "hamiltonian": {"path": "/abs/h.psum"},
    "reg": {"lambda0": 0.125},
    "sweep": {"n_seeds": 7, "workers": 2}
  })",
                                "/base");
  const auto echoed = parse_config(resolved_config_json(cfg), "/base");
  CHECK(echoed.sweep.hamiltonian_path == cfg.sweep.hamiltonian_path);
  CHECK(echoed.lambda0 == cfg.lambda0);
  CHECK(echoed.sweep.n_seeds == 7);
  CHECK(echoed.sweep.workers == 2);
  CHECK(echoed.sweep.lambda_grid == cfg.sweep.lambda_grid);
  CHECK(resolved_config_json(echoed) == resolved_config_json(cfg));
}

TEST_CASE("config: unknown keys and bad values rejected") {
  CHECK_THROWS_AS(parse_config(R"({"hamiltonian": {"path": "x"}, "bogus": 1})", "."),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"hamiltonian": {}})", "."), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"hamiltonian": {"path": "x", "rfim": {}}})", "."),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"hamiltonian": {"path": "x"},
                                   "reg": {"lambda0": -0.1}})", "."),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"hamiltonian": {"path": "x"},
                                   "opt": {"gtol": 0.0}})", "."),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("not json", "."), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"hamiltonian": {"path": "x"},
                                   "ansatz": {"kind": "uccsd"}})", "."),
                  ConfigError);
}
