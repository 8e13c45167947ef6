# Copyright 2026 The cooplab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
from fractions import Fraction

import pytest

import cooplab

C1 = [(1, 2), (1, 3), (2, 3), (2, 1), (3, 1), (3, 2)]


def test_builtins_listed():
    names = cooplab.builtin_names()
    assert "shapley" in names and "example1" in names


def test_shapley_is_not_equivalent():
    assert cooplab.classify(cooplab.builtin("shapley"))["label"] == "NONE"


def test_example1_ratio():
    v = cooplab.classify(cooplab.builtin("example1"))
    assert v["label"] == "SZ"
    assert v["beta"] / v["alpha"] == Fraction(2, 3)


def test_decomposition_recomposes_exactly():
    game = ([[3, Fraction(1, 2)], [0, -2]], [[1, 4], ["5/6", 0.25]])
    for mode in ("hodge", "strategic"):
        parts = cooplab.decompose(game, mode)
        for player in (0, 1):
            total = [[sum(p[player][i][j] for p in parts.values()) for j in range(2)]
                     for i in range(2)]
            assert total == [[Fraction(x) for x in row] for row in game[player]]


def test_threshold_is_five_sixths():
    assert cooplab.threshold(cooplab.builtin("example1")) == Fraction(5, 6)


def test_shapley_dfp_cycles():
    r = cooplab.dfp(cooplab.builtin("shapley"), init=(1, 2), rounds=100000)
    assert not r["converged"]
    assert r["cycle"]["pairs"] == C1


def test_shapley_cfp_symmetric_start_converges():
    r = cooplab.cfp(cooplab.builtin("shapley"), init=(1, 1))
    assert r["verdict"] == "ConvergedToNE"
    assert max(abs(x - 1 / 3) for x in r["p"] + r["q"]) < 1e-6


def test_cli_json():
    code, out, _ = cooplab.run_cli("--json", "classify", "--builtin", "example1")
    assert code == 0
    assert json.loads(out)["label"] == "SZ"


def test_errors_raise():
    with pytest.raises(cooplab.CooplabError):
        cooplab.builtin("no-such-game")
    with pytest.raises(cooplab.CooplabError):
        cooplab.classify(([[1, 2]], [[1]]))
