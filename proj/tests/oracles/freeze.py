"""Run every oracle and write frozen_oracles.hpp next to this file."""
import pathlib
import sys

HERE = pathlib.Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))

import bk_riemann_oracle  # noqa: E402
import buildup_oracle  # noqa: E402
import cavity_oracle  # noqa: E402
import dispersion_oracle  # noqa: E402
import hc_oracle  # noqa: E402
import loop_oracle  # noqa: E402
import mode_match_oracle  # noqa: E402
import overlap_oracle  # noqa: E402
import phasematch_oracle  # noqa: E402

MODULES = [dispersion_oracle, phasematch_oracle, bk_riemann_oracle, overlap_oracle,
           mode_match_oracle, cavity_oracle, buildup_oracle, hc_oracle, loop_oracle]


def main():
    lines = ["#pragma once", "", "// generated by tests/oracles/freeze.py, do not edit", "",
             "namespace oracle {", ""]
    for m in MODULES:
        lines.append(f"// {m.__name__}")
        for k, v in m.values().items():
            lines.append(f"inline constexpr double {k} = {v:.17g};")
        lines.append("")
    lines.append("} // namespace oracle")
    (HERE / "frozen_oracles.hpp").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
