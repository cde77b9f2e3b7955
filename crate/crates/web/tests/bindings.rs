use locdim_web::{analyze_graph, construct_set, generate_graph};
use serde_json::Value;

#[test]
fn generate_families() {
    assert_eq!(generate_graph("gtw", 2, 3).unwrap(), "D{c");
    assert_eq!(generate_graph("complete", 5, 0).unwrap(), "D~{");
    assert!(generate_graph("gtw", 1, 3).is_err());
    assert!(generate_graph("petersen", 10, 0).is_err());
}

#[test]
fn analyze_glued_k4s() {
    let g = generate_graph("gtw", 2, 4).unwrap();
    let v: Value = serde_json::from_str(&analyze_graph(&g).unwrap()).unwrap();
    assert_eq!(v["n"], 7);
    assert_eq!(v["omega"], 4);
    assert_eq!(v["bound"], 4);
    assert_eq!(v["dims"]["dim_al"]["size"], 4);
    assert_eq!(v["main_bound"], "pass");
    assert_eq!(v["decomposition"]["layers"][2], serde_json::json!([[0, 1, 2, 3, 4]]));
    assert_eq!(v["decomposition"]["layers"][5], serde_json::json!([[5, 6]]));
    assert!(v["properties"].as_array().unwrap().iter().all(|p| p["holds"] == true));
}

#[test]
fn analyze_outside_the_hypothesis() {
    let v: Value = serde_json::from_str(&analyze_graph("Ch").unwrap()).unwrap();
    assert_eq!(v["omega"], 2);
    assert!(v["bound"].is_null());
    assert!(v["decomposition"].is_null());
    assert_eq!(v["main_bound"], "skip");
    assert!(analyze_graph("").is_err());
}

#[test]
fn construct_both_modes() {
    let g = generate_graph("gtw", 2, 4).unwrap();
    let v: Value = serde_json::from_str(&construct_set(&g, "faithful").unwrap()).unwrap();
    assert_eq!(v["set"], serde_json::json!([2, 3, 4, 6]));
    assert_eq!(v["valid"], true);
    let v: Value = serde_json::from_str(&construct_set("G~aCC?", "pruned").unwrap()).unwrap();
    assert_eq!(v["valid"], true);
    assert!(v["size"].as_u64().unwrap() <= 3);
    assert!(construct_set(&g, "greedy").is_err());
    assert!(construct_set("D~{", "faithful").is_err());
}
