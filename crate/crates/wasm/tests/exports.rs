use butterfly_wasm::{random_figure, verify_scenario, worked_example_transcript};
use serde_json::Value;

#[test]
fn random_figures_hold_and_are_deterministic() {
    for kind in ["ellipse", "hyperbola", "parabola", "projective"] {
        for seed in 0..3 {
            let text = random_figure(kind, seed).unwrap();
            assert_eq!(text, random_figure(kind, seed).unwrap());
            let v: Value = serde_json::from_str(&text).unwrap();
            assert_eq!(v["status"], "Holds", "{kind} {seed}: {v}");
            assert!(v["svg"].as_str().unwrap().starts_with("<svg"));
        }
    }
    assert!(random_figure("circle", 0).is_err());
}

#[test]
fn edited_scenarios_are_reverified() {
    let v: Value = serde_json::from_str(&random_figure("hyperbola", 4).unwrap()).unwrap();
    let scenario = v["scenario"].as_str().unwrap();
    let out: Value = serde_json::from_str(&verify_scenario(scenario)).unwrap();
    assert_eq!(out["exit_code"], 0);
    assert!(out["svg"].is_string());

    let out: Value = serde_json::from_str(&verify_scenario("check = damn\n")).unwrap();
    assert_eq!(out["exit_code"], 2);
    assert!(out["svg"].is_null());
}

#[test]
fn worked_example() {
    assert!(worked_example_transcript()
        .unwrap()
        .contains("(1 : 1/2 : 1/2)"));
}
