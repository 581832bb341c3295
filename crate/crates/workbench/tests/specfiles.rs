//! The shipped manifold-spec files parse, validate, round-trip, and agree
//! with the built-in registry models.

use conewb::registry;
use conewb::specfile::{parse_spec, save_spec};

fn load(name: &str) -> conewb::specfile::LoadedSpec {
    let path = format!("{}/specs/{name}.spec", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap();
    parse_spec(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn shipped_specs_match_registry() {
    for name in ["heisenberg", "so3sl2", "flat5"] {
        let spec = load(name);
        let fix = registry::registry_get(name).unwrap();
        assert_eq!(spec.model.dim(), fix.model.dim(), "{name}: dimension");
        let n = fix.model.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    assert_eq!(
                        spec.model.c(i, j, k),
                        fix.model.c(i, j, k),
                        "{name}: bracket ({i},{j},{k})"
                    );
                }
            }
        }
        for (sname, s) in &spec.contacts {
            let reg = fix.contact(sname).unwrap();
            assert_eq!(s.eta(), reg.eta(), "{name}/{sname}: eta");
            assert_eq!(s.fundamental(), reg.fundamental(), "{name}/{sname}: F");
        }
    }
}

#[test]
fn save_load_is_identity_on_canonical_specs() {
    for name in ["heisenberg", "so3sl2", "flat5"] {
        let spec = load(name);
        let saved = save_spec(&spec);
        let reloaded = parse_spec(&saved).unwrap();
        assert_eq!(saved, save_spec(&reloaded), "{name}: canonical round trip");
    }
}
