# Copyright 2020 Google LLC
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

"""Statistics of pattern-avoiding permutations and Dyck paths.

Usage:
permstat.py distribution --class 132 --n 3 --stats fp,exc --format csv
permstat.py map --bijection rs --perm 23147586
permstat.py paths --n 4 --stats h,dr,va,p2,ct,lt
permstat.py series --name f321 --order 5
permstat.py verify --all --n 8 --order 6

Exit status is 0 on success, 1 when a verification check fails and 2 on a
usage error.
"""
import csv
import io
import json
from typing import List, Sequence
from absl import app
from absl import flags
from permstat import bijections
from permstat import checks
from permstat import dyck
from permstat import oracle
from permstat.permutations import Permutation
from permstat.series import Series, Window
from permstat.series_forms import CLOSED_FORMS, closed_form
from permstat.stat_meta import (
    PATH_STATISTICS,
    VARIABLES,
    class_name,
    ntos,
    parse_window_spec,
)


FLAGS = flags.FLAGS


COMMANDS = ("distribution", "map", "paths", "series", "verify")

# CLI spelling => closed form
_SERIES_ALIASES = {"f132x": "f132_x", "g": "g_conj"}


flags.DEFINE_enum(
    "class", "321", ["321", "132", "all", "dyck"], "Class to enumerate"
)
flags.DEFINE_integer(
    "n", None, "Size of the permutations or semilength of the paths"
)
flags.DEFINE_list("stats", None, "Comma-separated statistic names")
flags.DEFINE_enum(
    "bijection", "rs", sorted(bijections.BIJECTIONS), "Bijection for 'map'"
)
flags.DEFINE_string("perm", None, "Permutation, e.g. 23147586 or 10,9,1,...")
flags.DEFINE_integer(
    "r", 0, "Reference line offset for the tunnel statistics of 'map'"
)
flags.DEFINE_string("name", None, "Closed form for 'series'")
flags.DEFINE_integer("order", None, "Truncation order in t (z for h3)")
flags.DEFINE_multi_string(
    "window",
    [],
    "Exponent range VAR=LO:HI, repeatable, e.g. --window v=-8:14. "
    "Offset variables default to :order.",
)
flags.DEFINE_string("check", None, "Check id for 'verify'")
flags.DEFINE_bool("all", False, "Run the whole verification catalogue")
flags.DEFINE_enum("format", "text", ["text", "csv", "json"], "Output format")
flags.DEFINE_string("output_file", "-", "Output file ('-' means stdout)")
flags.DEFINE_integer("max_n", None, "Override the enumeration ceiling")


def _require(value, flag: str):
    if value is None:
        raise app.UsageError(f"--{flag} is required", exitcode=2)
    return value


def _rows_to_csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _rows_to_text(header: Sequence[str], rows) -> str:
    lines = [" ".join(str(v) for v in row) for row in [header, *rows]]
    return "\n".join(lines) + "\n"


def _distribution() -> str:
    cls = class_name(FLAGS["class"].value)
    default = ["h", "dr"] if cls == "dyck" else ["fp", "exc"]
    table = oracle.distribution(
        cls, _require(FLAGS.n, "n"), FLAGS.stats or default, max_n=FLAGS.max_n
    )
    if FLAGS.format == "json":
        return table.tojson() + "\n"
    if FLAGS.format == "csv":
        return table.tocsv()
    return _rows_to_text(table.stats + ("count",), table.rows())


def _map() -> str:
    pi = Permutation.fromstring(_require(FLAGS.perm, "perm"))
    path = bijections.bijection(FLAGS.bijection).forward(pi)
    shape = dyck.path_stats(path)
    tunnels = dyck.tunnel_stats(path, FLAGS.r)
    record = {
        "bijection": FLAGS.bijection,
        "perm": pi.tostring(),
        "word": path.tostring(),
        **shape._asdict(),
        "uud": dyck.count_factor(path, "uud"),
        **tunnels._asdict(),
    }
    if FLAGS.format == "json":
        return json.dumps(record, indent=2) + "\n"
    if FLAGS.format == "csv":
        return _rows_to_csv(list(record), [list(record.values())])
    lines = [path.tostring()]
    lines.append(" ".join(f"{k}={v}" for k, v in shape._asdict().items()))
    lines.append(" ".join(f"{k}={v}" for k, v in tunnels._asdict().items()))
    return "\n".join(lines) + "\n"


def _paths() -> str:
    n = _require(FLAGS.n, "n")
    stats = FLAGS.stats or list(PATH_STATISTICS)
    for stat in stats:
        if stat not in PATH_STATISTICS:
            raise ValueError(f"{stat!r} is not a path statistic")
    header = ["word", *stats]
    rows = [
        [path.tostring(), *oracle.path_statistics(path, stats)]
        for path in oracle.enumerate_paths(n, FLAGS.max_n or oracle.MAX_DYCK_N)
    ]
    if FLAGS.format == "json":
        return json.dumps([dict(zip(header, row)) for row in rows], indent=2) + "\n"
    if FLAGS.format == "csv":
        return _rows_to_csv(header, rows)
    return _rows_to_text(header, rows)


def _series_window(name: str, order: int) -> Window:
    form = CLOSED_FORMS[name]
    bounds = dict(parse_window_spec(s) for s in FLAGS.window)
    bounds[form.grading] = (0, order)
    if form.offset is not None and form.offset not in bounds:
        bounds[form.offset] = (None, order)
    return Window.of(**bounds)


def _series() -> str:
    name = _require(FLAGS.name, "name")
    name = _SERIES_ALIASES.get(name, name)
    if name not in CLOSED_FORMS:
        raise ValueError(f"Unknown series {FLAGS.name!r}")
    window = _series_window(name, _require(FLAGS.order, "order"))
    full = closed_form(name, window)
    # lower bounds select what is shown
    shown = Series(
        {m: c for m, c in full.terms.items() if window.contains(m)},
        Window(full.window.hi, window.lo),
    )
    if FLAGS.format == "json":
        terms = [
            {"coefficient": ntos(shown.terms[m]), **m._asdict()}
            for m in sorted(shown.terms)
        ]
        record = {"window": shown.window.tostring(), "terms": terms}
        return json.dumps(record, indent=2) + "\n"
    if FLAGS.format == "csv":
        rows = [[ntos(shown.terms[m]), *m] for m in sorted(shown.terms)]
        return _rows_to_csv(["coefficient", *VARIABLES], rows)
    return shown.tostring()


def _verify() -> List[checks.CheckReport]:
    overrides = {
        k: v for k, v in (("n", FLAGS.n), ("order", FLAGS.order)) if v is not None
    }
    if FLAGS.all:
        return checks.run_all(**overrides)
    check_id = _require(FLAGS.check, "check")
    if check_id not in checks.CHECKS:
        raise ValueError(f"Unknown check {check_id!r}")
    defaults = checks.CHECKS[check_id].defaults
    overrides = {k: v for k, v in overrides.items() if k in defaults}
    return [checks.run_check(check_id, **overrides)]


def _format_reports(reports: List[checks.CheckReport]) -> str:
    if FLAGS.format == "json":
        return "[\n" + ",\n".join(r.tojson() for r in reports) + "\n]\n"
    return "\n".join(r.tostring() for r in reports) + "\n"


def _write(output: str):
    if FLAGS.output_file == "-":
        print(output, end="")
    else:
        with open(FLAGS.output_file, "w") as f:
            f.write(output)


def _run(argv) -> int:
    if len(argv) != 2 or argv[1] not in COMMANDS:
        raise app.UsageError(
            f"Expected exactly one command from {COMMANDS}, got {argv[1:]}",
            exitcode=2,
        )
    command = argv[1]
    try:
        if command == "verify":
            reports = _verify()
            _write(_format_reports(reports))
            return 0 if all(r.passed for r in reports) else 1
        output = {
            "distribution": _distribution,
            "map": _map,
            "paths": _paths,
            "series": _series,
        }[command]()
    except ValueError as e:
        raise app.UsageError(str(e), exitcode=2)
    _write(output)
    return 0


def _parse_flags(argv):
    FLAGS.unparse_flags()
    try:
        return FLAGS(argv)
    except flags.Error as e:
        app.usage(shorthelp=True, detailed_error=e, exitcode=2)


def run(argv: Sequence[str]) -> int:
    """Parse argv (program name first) and run; returns the exit code."""
    return _run(_parse_flags(list(argv)))


def main(argv=None):
    # We don't seem to be __main__ when run as cli tool installed by setuptools
    app.run(_run, argv=argv, flags_parser=_parse_flags)


if __name__ == "__main__":
    main()
