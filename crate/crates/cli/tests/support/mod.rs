#![allow(dead_code)]

use std::path::{Path, PathBuf};

use aerorisk_cli::{execute_command, CommandResult};
use serde_json::Value;

pub fn workspace() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

pub fn fixture(name: &str) -> String {
    workspace()
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

pub fn run(args: &[&str]) -> CommandResult {
    execute_command(args.iter().copied())
}

/// Asserts `instance` validates against `docs/schemas/<name>.schema.json`.
pub fn assert_schema(name: &str, instance: &Value) {
    let path = workspace()
        .join("docs/schemas")
        .join(format!("{name}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator
        .iter_errors(instance)
        .map(|e| format!("{e} at {}", e.instance_path))
        .collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}
