use pyo3::prelude::*;
use pyo3::types::PyDict;
use std::sync::Once;

static REGISTER: Once = Once::new();

fn eval<'py>(py: Python<'py>, code: &str) -> Bound<'py, PyDict> {
    let globals = PyDict::new(py);
    let code = std::ffi::CString::new(code).unwrap();
    py.run(&code, Some(&globals), None).unwrap();
    globals
}

#[test]
fn module_round_trip() {
    REGISTER.call_once(derivk_py::register_embedded);
    Python::attach(|py| {
        let g = eval(
            py,
            r#"
import json
import derivk
r = derivk.Ring("zp2", 3)
k = r.residue_field()
m = derivk.Module(r, 1, 2)
table = derivk.mesh_hom_table(2, 1)
c = derivk.verify_iso1(r, 1)
parts = derivk.QuiverRep(k, [1, 2], [[[1], [0]]]).decompose()
code, _ = derivk.run(["verify-iso1", "--level", "7"])
out = (r.kind, k.is_field(), m.stable_hom_dim(m), table, c.passed, json.loads(c.to_json())["check"], parts, code)
"#,
        );
        let out: (String, bool, u32, Vec<Vec<usize>>, bool, String, Vec<(usize, usize)>, i32) =
            g.get_item("out").unwrap().unwrap().extract().unwrap();
        assert_eq!(out.0, "zp2");
        assert!(out.1);
        assert_eq!(out.2, 4);
        assert_eq!(out.3, vec![vec![1, 0, 0], vec![1, 1, 0], vec![0, 1, 1]]);
        assert!(out.4);
        assert_eq!(out.5, "verify-iso1");
        assert_eq!(out.6, vec![(0, 1), (1, 1)]);
        assert_eq!(out.7, 2);
    });
}

#[test]
fn bad_input_raises_value_error() {
    REGISTER.call_once(derivk_py::register_embedded);
    Python::attach(|py| {
        let g = eval(
            py,
            r#"
import derivk
caught = []
for f in (lambda: derivk.Ring("zp2", 4), lambda: derivk.Ring("q", 2), lambda: derivk.b_family(4, 1)):
    try:
        f()
    except ValueError:
        caught.append(True)
"#,
        );
        assert_eq!(g.get_item("caught").unwrap().unwrap().len().unwrap(), 3);
    });
}
