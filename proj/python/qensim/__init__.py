# Copyright 2026 The qensim authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Seeded quantum ensemble simulations with deterministic reports.

The heavy lifting lives in the compiled ``_core`` extension: explicit
ensemble compositions, projective measurement with collapse, global
fluctuation statistics, product-state decompositions of highly mixed
states, and the packaged scenario runners.
"""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401

_SCENARIOS = ("despagnat", "collapse", "peres", "preskill", "bellpair",
              "bb84", "nmr")


def report(scenario, **kwargs):
    """Run a scenario by name and return its report as a parsed dict.

    ``scenario`` is one of ``despagnat``, ``collapse``, ``peres``,
    ``preskill``, ``bellpair``, ``bb84``, ``nmr``; keyword arguments are
    forwarded to the runner (``seed``, ``threads``, and the scenario's own
    parameters).
    """
    if scenario not in _SCENARIOS:
        raise ValueError(f"unknown scenario {scenario!r}; "
                         f"expected one of {_SCENARIOS}")
    kwargs.pop("fmt", None)
    from . import _core
    line = getattr(_core, scenario)(fmt="json-records", **kwargs)
    return _json.loads(line)
