use std::process::{Command, Output};

fn gps_resum(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gps-resum"));
    cmd.args(args).env_remove("GPS_RESUM_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn success_prints_a_table() {
    let o = gps_resum(&["zeta", "--grid=2:2:1"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("s"));
    assert!(s.contains("1.644934066848228"), "{s}");
}

#[test]
fn csv_output() {
    let o = gps_resum(&["gamma", "--grid=5:5:1", "--format=csv"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let lines: Vec<&str> = s.split("\r\n").collect();
    assert_eq!(lines[0], "x,log_gamma,gamma,bound,reference,diff,status");
    assert!(lines[1].starts_with("5e0,3.17805383034794"), "{s}");
    assert!(!s.contains('E'));
}

#[test]
fn failed_check_exits_with_one() {
    let o = gps_resum(&["multisum", "euler", "--grid=0.2:0.2:1"], &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("inadmissible"));
    let o = gps_resum(&["multisum", "euler", "--grid=0.1:0.1:1", "--tol=1e-4"], &[]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_and_parse_errors_exit_with_two() {
    assert_eq!(gps_resum(&["frobnicate"], &[]).status.code(), Some(2));
    assert_eq!(gps_resum(&["eval", "--grid=1:2"], &[]).status.code(), Some(2));
    assert_eq!(gps_resum(&["eval"], &[]).status.code(), Some(2));
    assert_eq!(gps_resum(&["zeta", "--grid=1:3:3"], &[]).status.code(), Some(2));
    assert_eq!(gps_resum(&["eval", "/nonexistent/file.gps"], &[]).status.code(), Some(2));
    assert_eq!(gps_resum(&["zeta"], &[("GPS_RESUM_THREADS", "many")]).status.code(), Some(2));
}

#[test]
fn thread_environment_variable() {
    let a = gps_resum(&["gamma"], &[("GPS_RESUM_THREADS", "1")]);
    let b = gps_resum(&["gamma", "--threads=3"], &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn bundled_checks_pass() {
    for args in [&["gevrey"][..], &["subst", "ramification"], &["subst"]] {
        let o = gps_resum(args, &[]);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
    }
    assert!(stdout(&gps_resum(&["gevrey"], &[])).contains("# D = "));
    let o = gps_resum(&["roundtrip", "convergent-demo", "--grid=-3:-2:2", "--tol=1e-6"], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
