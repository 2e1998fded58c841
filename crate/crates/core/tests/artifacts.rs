use fracgs::continuation::{continue_branch, ContinuationConfig};
use fracgs::extension::{default_levels, extend};
use fracgs::io::{read_branch, read_json, write_branch, write_extension, write_spectrum, ExtensionDescriptor};
use fracgs::linearization::{build_lplus, spectrum, Sector};
use fracgs::{solve_ground_state, Field, Grid, ModelParams, Parity, SolverOptions};
use proptest::prelude::*;

#[test]
fn branch_round_trip() {
    let params = ModelParams::new(0.95, 2.0, 1.0).unwrap();
    let grid = Grid::new(64.0, 1024).unwrap();
    let start = solve_ground_state(&params, &grid, None, &SolverOptions { tol: 1e-12, ..Default::default() }).unwrap();
    let branch = continue_branch(&start, &ContinuationConfig { target_s: 0.97, ..Default::default() }).unwrap();
    assert!(branch.reached_target());
    let dir = tempfile::tempdir().unwrap();
    write_branch(dir.path(), &branch).unwrap();
    let back = read_branch(dir.path()).unwrap();
    assert_eq!(back.points.len(), branch.points.len());
    for (a, b) in back.points.iter().zip(&branch.points) {
        assert_eq!((a.s, a.lambda, a.monitors), (b.s, b.lambda, b.monitors));
    }
    assert_eq!(back.termination, branch.termination);
    let end = Field::read_csv(&dir.path().join("end.csv")).unwrap();
    assert_eq!(end.values(), branch.last().field().values());
}

#[test]
fn spectrum_and_extension_files() {
    let params = ModelParams::new(1.0, 2.0, 1.0).unwrap();
    let grid = Grid::new(40.0, 256).unwrap();
    let q = solve_ground_state(&params, &grid, None, &SolverOptions::periodic()).unwrap().q;
    let even = spectrum(&build_lplus(&q, &params, Sector::Even).unwrap(), 2).unwrap();
    let dir = tempfile::tempdir().unwrap();
    write_spectrum(dir.path(), &even).unwrap();
    let v: serde_json::Value = read_json(&dir.path().join("spectrum-even.json")).unwrap();
    let ev: Vec<f64> = serde_json::from_value(v["eigenvalues"].clone()).unwrap();
    assert_eq!(ev, even.eigenvalues);
    let psi = Field::read_csv(&dir.path().join("eigenfield-even-1.csv")).unwrap();
    assert_eq!(psi.values(), even.eigenfields[1].values());

    let u = extend(&q, 0.5, &default_levels(&grid, 16)).unwrap();
    write_extension(dir.path(), "q", &u).unwrap();
    let desc: ExtensionDescriptor = read_json(&dir.path().join("q.json")).unwrap();
    assert_eq!(desc.levels, u.levels);
    let mut rows = csv::Reader::from_path(dir.path().join(&desc.samples_csv)).unwrap();
    let last = rows.records().last().unwrap().unwrap();
    let value: f64 = last[2].parse().unwrap();
    assert_eq!(value, u.samples[15][255]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn field_csv_is_lossless(seed in any::<u64>(), n in 3usize..7) {
        let grid = Grid::new(10.0, 1 << n).unwrap();
        let f = grid.sample(|x| ((seed % 997) as f64 * 1e-3 + x).sin() / 3.0);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.csv");
        f.write_csv(&path).unwrap();
        let back = Field::read_csv(&path).unwrap();
        prop_assert_eq!(back.values(), f.values());
        prop_assert_eq!(back.grid().spec(), grid.spec());
        let _ = Parity::None;
    }
}
