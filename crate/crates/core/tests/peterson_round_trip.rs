use peterson_toric::par::Exec;
use peterson_toric::verify::{verify_psi_cells, Status};

#[test]
fn psi_round_trip_recovers_parameters() {
    for n in 2..=5 {
        let failed: Vec<_> = verify_psi_cells(n, 25, 0, 7, 1e-8, Exec::default())
            .into_iter()
            .filter(|r| r.check_id == "psi.round_trip" && r.status != Status::Pass)
            .collect();
        for r in &failed {
            eprintln!("{}", serde_json::to_string(r).unwrap());
        }
        assert!(failed.is_empty(), "n = {n}: {} strata failed the round trip", failed.len());
    }
}
