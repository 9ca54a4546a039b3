use std::path::PathBuf;
use std::process::{Command, Output};

use gentle_core::parse_quiver;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn gentle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gentle"))
        .args(args)
        .env_remove("GD_DEFAULT_PRIMES")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_reports_gentle_and_gorenstein() {
    let o = gentle(&["check", &data("n3.quiver")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("gentle: yes; 1-Gorenstein: yes; cycles: 1"));
}

#[test]
fn check_flags_non_gorenstein_relation() {
    let o = gentle(&["check", &data("a3rel.quiver")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("gentle: yes; 1-Gorenstein: no; cycles: 0"), "{out}");
    assert!(out.contains("lies on no cycle"));
}

#[test]
fn example_5_1_report() {
    let o = gentle(&["example", "5.1", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("X points(2)=25, Y points(2)=27, singular tangent=4"), "{out}");
    assert!(out.contains("golden: all expectations met"));
}

#[test]
fn example_5_2_report() {
    let o = gentle(&["example", "5.2", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("X points(2)=87, Y points(2)=99, singular tangent=5"), "{out}");
    assert!(out.contains("= 2e_1 + e_3 + 2e_4 + e_6 + e_9 in figure numbering"));
}

#[test]
fn auslander_output_round_trips() {
    let o = gentle(&["auslander", &data("n3.quiver")]);
    assert_eq!(o.status.code(), Some(0));
    let g = parse_quiver(&stdout(&o)).unwrap();
    assert_eq!(g.vertex_count(), 6);
    assert_eq!(g.arrow_count(), 6);
    assert_eq!(g.relations().len(), 3);
    assert_eq!(g.to_text(), stdout(&o));
}

#[test]
fn phi_emits_a_module_over_gamma() {
    let o = gentle(&["phi", &data("n3.quiver"), &data("n3_m.module"), "--q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("module n3_m^ over Aus(N3)\n"));
    let dims: usize = out
        .lines()
        .filter_map(|l| l.strip_prefix("dim "))
        .map(|l| l.rsplit(' ').next().unwrap().parse::<usize>().unwrap())
        .sum();
    // 3 + 3 at the old vertices, rank of M_gamma at @gamma
    assert_eq!(dims, 8);
}

#[test]
fn grass_machine_lines() {
    let o = gentle(&["grass", "strata", &data("n3.quiver"), &data("n3_m.module"), "1=2,3=1", "--q", "2", "--machine"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let counts: Vec<(i64, usize)> = out
        .lines()
        .map(|l| {
            let w: Vec<&str> = l.split(' ').collect();
            assert_eq!((w[0], w[2], w[4]), ("stratum", "dim", "count"));
            assert_eq!(w[1].len(), 16);
            (w[3].parse().unwrap(), w[5].parse().unwrap())
        })
        .collect();
    assert_eq!(counts, vec![(3, 18), (2, 7)]);

    let o = gentle(&["grass", "tangent", &data("n3.quiver"), &data("n3_m.module"), "2,0,1", "--q", "2", "--machine"]);
    assert_eq!(stdout(&o), "tangent 3 count 24\ntangent 4 count 1\n");
}

#[test]
fn grass_count_interpolates() {
    let o = gentle(&["grass", "count", &data("n3.quiver"), &data("n3_m.module"), "1=2,3=1", "--machine"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    // oracle: q^3 + 3q^2 + 2q + 1 at q = 3
    let q = 3u64;
    assert!(out.contains(&format!("count 3 {}\n", q * q * q + 3 * q * q + 2 * q + 1)));
    assert!(out.contains("euler 7\n"));
}

#[test]
fn default_primes_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_gentle"))
        .args(["grass", "count", &data("n3.quiver"), &data("n3_m.module"), "1=2,3=1", "--machine"])
        .env("GD_DEFAULT_PRIMES", "3,5")
        .output()
        .unwrap();
    let first = stdout(&o).lines().next().unwrap().to_string();
    assert_eq!(first, "count 3 61");
}

#[test]
fn desing_verify_passes() {
    let o = gentle(&["desing", "verify", &data("n3.quiver"), &data("n3_m.module"), "1=2,3=1", "--q", "2", "--fibers"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.ends_with("result: pass\n"));
    assert!(out.contains("predicted"));
}

#[test]
fn desing_rejects_non_gorenstein_input() {
    let dir = std::env::temp_dir().join(format!("gentle-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let m = dir.join("s2.module");
    std::fs::write(&m, "module S over A3rel\nsum S2\n").unwrap();
    let o = gentle(&["desing", "verify", &data("a3rel.quiver"), m.to_str().unwrap(), "2=1", "--q", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(gentle(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(gentle(&["check"]).status.code(), Some(2));
    assert_eq!(gentle(&["check", "/no/such/file.quiver"]).status.code(), Some(2));
    assert_eq!(gentle(&["example", "9.9"]).status.code(), Some(2));
    assert_eq!(gentle(&["example", "5.1", "--q", "4"]).status.code(), Some(2));
    assert_eq!(gentle(&["example", "5.1", "--jobs", "0"]).status.code(), Some(2));
    assert_eq!(gentle(&["--help"]).status.code(), Some(0));
}

#[test]
fn relation_violation_is_reported() {
    let dir = std::env::temp_dir().join(format!("gentle-cli-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let m = dir.join("bad.module");
    std::fs::write(&m, "module B over N3\ndim 1 1\ndim 2 1\ndim 3 1\nmap alpha 1\nmap beta 1\n").unwrap();
    let o = gentle(&["phi", &data("n3.quiver"), m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("violates relation"), "{err}");
}

#[test]
fn jobs_do_not_change_output() {
    for args in [
        vec!["example", "5.2", "--q", "2"],
        vec!["grass", "strata", "CT5", "M", "1=2,3=1,4=2", "--q", "3"],
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| match *a {
                "CT5" => data("ct5.quiver"),
                "M" => data("ct5_m.module"),
                x => x.to_string(),
            })
            .collect();
        let run = |jobs: &str| {
            let mut a: Vec<&str> = args.iter().map(String::as_str).collect();
            a.extend(["--jobs", jobs]);
            gentle(&a)
        };
        let (one, eight) = (run("1"), run("8"));
        assert_eq!(one.status.code(), Some(0));
        assert_eq!(one.stdout, eight.stdout);
    }
}

#[test]
fn golden_mismatch_exits_1() {
    // without any strings the fingerprints cannot name the strata
    let o = gentle(&["example", "5.1", "--q", "2", "--length-bound", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("golden mismatch: generic types"));
}
