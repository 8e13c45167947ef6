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

"""Bimatrix game decomposition, classification and fictitious play.

Games are (A, B) pairs of nested lists. Exact entries are returned as
fractions.Fraction; inputs may be int, Fraction, float or strings like "5/6".
"""

from fractions import Fraction

from cooplab import _core
from cooplab._core import CooplabError

__all__ = [
    "CooplabError",
    "builtin",
    "builtin_names",
    "cfp",
    "classify",
    "decompose",
    "dfp",
    "run_cli",
    "threshold",
]


def _encode(game):
    a, b = game
    return ([[str(x) for x in row] for row in a], [[str(x) for x in row] for row in b])


def _decode(game):
    a, b = game
    return ([[Fraction(x) for x in row] for row in a], [[Fraction(x) for x in row] for row in b])


def builtin_names():
    return _core.builtin_names()


def builtin(name):
    return _decode(_core.builtin(name))


def classify(game):
    """Returns {"label", "alpha", "beta"}; alpha and beta are None unless SZ or SI."""
    v = _core.classify(_encode(game))
    for key in ("alpha", "beta"):
        if v[key] is not None:
            v[key] = Fraction(v[key])
    return v


def decompose(game, mode="hodge"):
    return {name: _decode(part) for name, part in _core.decompose(_encode(game), mode).items()}


def threshold(game, lo=0, hi=1):
    return Fraction(_core.threshold(_encode(game), str(lo), str(hi)))


def dfp(game, init=(1, 1), rounds=100000, tie_rule="lowest", seed=0):
    """Discrete fictitious play from a 1-based pure pair. Cycle pairs are 1-based."""
    r = _core.dfp(_encode(game), (init[0] - 1, init[1] - 1), rounds, tie_rule, seed)
    return _one_based(r)


def cfp(game, init=(1, 1), horizon_log=None):
    """Continuous fictitious play from a 1-based pure pair."""
    args = (_encode(game), (init[0] - 1, init[1] - 1))
    r = _core.cfp(*args) if horizon_log is None else _core.cfp(*args, horizon_log)
    return _one_based(r)


def run_cli(*args):
    """Runs the command-line tool in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])


def _one_based(result):
    if result["cycle"] is not None:
        result["cycle"]["pairs"] = [(i + 1, j + 1) for i, j in result["cycle"]["pairs"]]
    return result
