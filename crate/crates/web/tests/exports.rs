use serde_json::Value;
use taskgrowth_web::{allocation_json, share_curve_json, trajectory_json, Params};

const BASE: Params = Params {
    beta: 0.5,
    rho: 0.0,
    alpha_c: 1e14,
    alpha_p: 1e21,
};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn trajectory_columns_and_times() {
    let v = parse(trajectory_json(BASE, 1e9, 1e22, 0.2, 100.0, 0.5).unwrap());
    assert_eq!(v["t"].as_array().unwrap().len(), 201);
    assert_eq!(v["labor_share"].as_array().unwrap().len(), 201);
    assert!((v["cognitive_time"].as_f64().unwrap() - 11.5129).abs() < 1e-3);
    assert!((v["physical_time"].as_f64().unwrap() - 92.1034).abs() < 1e-3);
    assert_eq!(v["limiting_labor_share"].as_f64().unwrap(), 0.0);
}

#[test]
fn infinite_physical_cost() {
    let p = Params {
        alpha_p: f64::INFINITY,
        ..BASE
    };
    let v = parse(trajectory_json(p, 1e9, 1e22, 0.2, 50.0, 1.0).unwrap());
    assert!(v["physical_time"].is_null());
    assert_eq!(v["limiting_labor_share"].as_f64().unwrap(), 0.5);
    let ces = Params { rho: -1.0, ..p };
    let v = parse(trajectory_json(ces, 1e9, 1e22, 0.2, 50.0, 1.0).unwrap());
    assert_eq!(v["limiting_labor_share"], "undetermined");
}

#[test]
fn allocation_at_a_point() {
    let v = parse(allocation_json(BASE, 0.0, 1e9).unwrap());
    assert_eq!(v["labor_share"].as_f64().unwrap(), 1.0);
    let v = parse(allocation_json(BASE, 1e25, 1e9).unwrap());
    assert_eq!(v["labor_share"].as_f64().unwrap(), 0.5);
    assert_eq!(v["cog_automated"], true);
    assert_eq!(v["phys_automated"], false);
    assert_eq!(v["labor_physical"].as_f64().unwrap(), 1e9);
}

#[test]
fn share_curve_is_non_increasing() {
    let v = parse(share_curve_json(BASE, 1e9, 1e18, 1e34, 161).unwrap());
    let s: Vec<f64> = v["labor_share"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(s.len(), 161);
    assert!(s.windows(2).all(|w| w[1] <= w[0] + 1e-12));
    assert!(share_curve_json(BASE, 1e9, 1e20, 1e18, 10).is_err());
}

#[test]
fn bad_parameters_are_errors() {
    let p = Params { beta: 1.5, ..BASE };
    assert!(allocation_json(p, 1.0, 1.0).is_err());
    let p = Params {
        alpha_c: 1e22,
        ..BASE
    };
    assert!(trajectory_json(p, 1e9, 1e22, 0.2, 10.0, 1.0).is_err());
    assert!(trajectory_json(BASE, 1e9, 1e22, 0.2, 10.0, 0.0).is_err());
}
