use std::io::Read;

use serde::Serialize;

use crate::CliError;
use permcode_core::Permutation;

/// Reads one permutation from stdin: a JSON array, or integers separated by
/// commas, spaces or parentheses.
pub fn read_permutation() -> Result<Permutation, CliError> {
    let mut text = String::new();
    std::io::stdin()
        .read_to_string(&mut text)
        .map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
    parse_permutation(&text)
}

pub fn parse_permutation(text: &str) -> Result<Permutation, CliError> {
    let text = text.trim();
    let entries: Vec<usize> = if text.starts_with('[') {
        serde_json::from_str(text)
            .map_err(|e| CliError::Usage(format!("stdin is not a JSON array of integers: {e}")))?
    } else {
        text.split(|c: char| c == ',' || c == '(' || c == ')' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse()
                    .map_err(|_| CliError::Usage(format!("{s:?} is not a positive integer")))
            })
            .collect::<Result<_, _>>()?
    };
    if entries.is_empty() {
        return Err(CliError::Usage("expected a permutation on stdin".into()));
    }
    Ok(Permutation::new(entries)?)
}

/// Prints `value` as JSON when `json` is set, otherwise `text`.
pub fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    if json {
        println!(
            "{}",
            serde_json::to_string(value).expect("serializable output")
        );
    } else {
        println!("{}", text());
    }
}

pub fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}
