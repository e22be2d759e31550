use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Where results go: a versioned JSON envelope, or plain text.
pub struct Output {
    pub json: bool,
    pub rng_seed: u64,
    pub command: String,
}

impl Output {
    /// Emit `result` as JSON, or call `text` to print the human form.
    pub fn emit<T: Serialize>(&self, result: &T, text: impl FnOnce()) {
        if self.json {
            let envelope = json!({
                "schema_version": SCHEMA_VERSION,
                "command": self.command,
                "rng_seed": self.rng_seed,
                "result": serde_json::to_value(result).unwrap_or(Value::Null),
            });
            println!("{}", serde_json::to_string_pretty(&envelope).expect("JSON values serialize"));
        } else {
            println!("rng-seed: {}", self.rng_seed);
            text();
        }
    }

    pub fn error(&self, message: &str, code: u8) {
        if self.json {
            let envelope = json!({
                "schema_version": SCHEMA_VERSION,
                "command": self.command,
                "rng_seed": self.rng_seed,
                "error": { "exit_code": code, "message": message },
            });
            println!("{}", serde_json::to_string_pretty(&envelope).expect("JSON values serialize"));
        }
        eprintln!("error: {message}");
    }
}
