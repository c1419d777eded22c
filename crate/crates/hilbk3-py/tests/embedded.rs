//! Loads the module into an embedded interpreter and drives it from Python.

use hilbk3_py::hilbk3_py;
use pyo3::prelude::*;

#[test]
fn module_from_python() {
    pyo3::append_to_inittab!(hilbk3_py);
    Python::initialize();
    Python::attach(|py| {
        py.run(
            cr#"
from fractions import Fraction
import hilbk3

delta = hilbk3.series("Delta", 3)
assert delta.row(2) == {0: (Fraction(-24), Fraction(0))}
assert hilbk3.yau_zaslow(3) == [1, 24, 324, 3200]
assert hilbk3.QSeries.from_json(delta.to_json()) == delta

table = hilbk3.wdvv_solve(2)
assert table.get("T", 0, 1) == 8 and table.get("I", 0, 0) == 2

hyp = hilbk3.hyperelliptic_table(6, 4)
assert hyp.bps(3, 4) == 6 and hyp.virtual_count(3, 2) == Fraction(-1, 4)

hilb = hilbk3.Hilb("small", 2)
assert hilb.bracket("p(-1,F) 1", "p(-1,F) 1").q_min == -1

for bad in (lambda: hilbk3.series("nope", 2), lambda: table.get("X", 0, 0), lambda: hilbk3.gw_series("x", 2, 2)):
    try:
        bad()
        raise AssertionError("expected ValueError")
    except ValueError:
        pass
"#,
            None,
            None,
        )
        .unwrap();
    });
}
