use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Refused,
}

/// The record printed by every command except `eval` and `proptest`.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub version: String,
    pub command: Vec<String>,
    /// Input path to the sha256 of its bytes.
    pub inputs: BTreeMap<String, String>,
    pub parameters: BTreeMap<String, Value>,
    pub verdict: Verdict,
    pub checks: Value,
}

impl Certificate {
    pub fn new(command: &[String]) -> Self {
        Self {
            version: format!("qp {}", env!("CARGO_PKG_VERSION")),
            command: command.to_vec(),
            inputs: BTreeMap::new(),
            parameters: BTreeMap::new(),
            verdict: Verdict::Pass,
            checks: Value::Object(Default::default()),
        }
    }

    pub fn input(&mut self, path: &Path) {
        let digest = match std::fs::read(path) {
            Ok(bytes) => hex::encode(Sha256::digest(&bytes)),
            Err(_) => "unreadable".to_string(),
        };
        self.inputs.insert(path.display().to_string(), digest);
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) {
        self.parameters.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn check(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("serializable");
        self.checks.as_object_mut().expect("object").insert(key.to_string(), v);
    }

    /// Canonical text: sorted keys, two-space indentation, trailing newline.
    pub fn render(&self) -> String {
        qp_core::io::to_canonical_string(&serde_json::to_value(self).expect("serializable"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_is_stable_and_sorted() {
        let mut c = Certificate::new(&["classify".into(), "h.json".into()]);
        c.param("max_degree", 4);
        c.check("zeta", true);
        c.check("alpha", false);
        let text = c.render();
        assert_eq!(text, c.clone().render());
        assert!(text.find("\"alpha\"").unwrap() < text.find("\"zeta\"").unwrap());
        assert!(text.contains("\"verdict\": \"pass\""));
        assert!(text.ends_with("}\n"));
    }

    #[test]
    fn digests_are_hex_sha256() {
        let dir = std::env::temp_dir().join(format!("qp-cert-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("x");
        std::fs::write(&p, "abc").unwrap();
        let mut c = Certificate::new(&[]);
        c.input(&p);
        let d = c.inputs.values().next().unwrap();
        assert_eq!(d, "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
        std::fs::remove_dir_all(&dir).ok();
    }
}
