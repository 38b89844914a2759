//! Fixture JSON: serializing a model, round-tripping it, and validating
//! a deliberately broken variant.

use hkcones::model::{builtin, HKModel};

fn main() {
    let m = builtin("k3-two-curves").unwrap();
    let text = m.to_json();
    println!("{}", text);

    let back = HKModel::from_json(&m.name, &text).unwrap();
    assert_eq!(back, m);
    println!("round trip: ok");

    let report = back.validate();
    println!("valid: {}", report.is_valid());

    // Break the symmetry of the gram matrix and watch validation object.
    let mut broken: serde_json::Value = serde_json::from_str(&text).unwrap();
    broken["gram"][0][1] = serde_json::Value::String("99".into());
    let broken = HKModel::from_json("broken", &broken.to_string()).unwrap();
    for v in broken.validate().violations {
        println!("violation at {}: {} ({})", v.location, v.code, v.message);
    }
}
