use derivk_core::cli::run;

fn derivk(args: &str) -> (i32, String) {
    run(std::iter::once("derivk").chain(args.split_whitespace()))
}

#[test]
fn simplicial_check_passes() {
    let (code, out) = derivk("check-simplicial --p 2 --max-level 4");
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("check-simplicial ring=fp p=2 n=4 cap=-: pass"), "{out}");
}

#[test]
fn independence_at_level_two() {
    let (code, out) = derivk("independence --p 3 --level 2 --format json-lines");
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), 1);
    assert!(out.contains("\"status\":\"pass\""));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(derivk("verify-iso1 --ring zp2 --p 7 --level 9").0, 2);
    assert_eq!(derivk("check-simplicial --max-level 7").0, 2);
    assert_eq!(derivk("k0 --p 4").0, 2);
    assert_eq!(derivk("hom-table --frobnicate").0, 2);
    assert_eq!(derivk("no-such-command").0, 2);
}

#[test]
fn failing_check_exits_with_one() {
    let (code, out) = derivk("remark --ring zp2");
    assert_eq!(code, 1);
    assert!(out.contains("witness: suspension of (k -> R) is k^1 -> 0, not isomorphic"), "{out}");
}

#[test]
fn output_does_not_depend_on_parallelism() {
    let serial = derivk("verify-iso2 --level 1 --format json-lines");
    let parallel = derivk("verify-iso2 --level 1 --format json-lines --parallel 4");
    assert_eq!(serial, parallel);
    let lines: Vec<&str> = serial.1.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].contains("\"ring\":\"fp-eps\"") && lines[1].contains("\"ring\":\"zp2\""));
}

#[test]
fn tables_and_output_file() {
    let dir = std::env::temp_dir().join(format!("derivk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("hom.jsonl");
    let (code, msg) = derivk(&format!("hom-table --level 2 --format json-lines --output {}", path.display()));
    assert_eq!(code, 0, "{msg}");
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.contains("\"mesh_hom_dims\":[[1,0,0,0,0,0],"), "{written}");
    std::fs::remove_dir_all(&dir).unwrap();
}
