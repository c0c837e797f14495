use atkin_core::exact_arith::rational::odd_primes;
use atkin_core::loci::{compute_loci, LocusReport};
use atkin_core::oracles::ss_elliptic_j;
use atkin_core::picard_fuchs::{parse_registry, preset};
use atkin_core::Error;

#[test]
fn delta25_sweep_reports_round_trip() {
    let pr = preset("delta-2-5").unwrap();
    let primes: Vec<u64> = odd_primes(3, 40).into_iter().filter(|&p| p != 5).collect();
    for (p, l) in compute_loci(&pr, &primes) {
        let l = l.unwrap_or_else(|e| panic!("p = {p}: {e}"));
        for b in &l.branches {
            assert!(b.sp.divides(&b.no));
            assert!(b.truncation.iter().all(|t| *t != Some(false)), "p = {p}");
        }
        let s = l.report().to_json_string();
        assert_eq!(LocusReport::from_json_str(&s).unwrap().to_json_string(), s);
    }
}

#[test]
fn classical_degree_counts_supersingular_j() {
    let pr = preset("delta-2-3").unwrap();
    for p in odd_primes(5, 80) {
        assert_eq!(pr.degree_of_ph(p, 1).unwrap(), ss_elliptic_j(p).unwrap().len(), "p = {p}");
    }
}

#[test]
fn registry_from_disk_resolves_relative_files() {
    let dir = std::env::temp_dir().join(format!("atkin-core-reg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("m.json"), r#"{"D": 0, "g": ["1", "1/2", "3/8", "5/16"]}"#).unwrap();
    let reg = r#"[{"name": "arcsine", "D": 0, "S": [2], "chi": "-1", "lyap": ["1/2"], "N": 1,
        "jprime": "identity", "degree": "none", "truncation": "lyapunov",
        "components": [{"moments": "m.json"}]}]"#;
    let pr = parse_registry(reg, Some(&dir)).unwrap().remove(0);
    let g = pr.moments(1, 4).unwrap();
    let a = atkin_core::pade_ortho::pade_denominator(&g, 2).unwrap();
    assert_eq!(a.degree(), Some(2));
    assert!(matches!(pr.moments(1, 6), Err(Error::Precision { needed: 6, available: 4 })));
    assert!(matches!(pr.degree_of_ph(7, 1), Err(Error::MissingDegree(_))));
}
