//! JSON serialization with floats pinned to 17 significant digits.
//!
//! Identical inputs must produce byte-identical summaries, so floats
//! are written as `{:.16e}` (one digit before the point, sixteen
//! after) instead of the default shortest representation.

use serde::Serialize;
use serde_json::ser::Formatter;
use std::io;

struct SigDigits;

impl Formatter for SigDigits {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.7e}")
    }
}

/// Serialize to a JSON string with deterministic float formatting and a
/// trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String, serde_json::Error> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigDigits);
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("serde_json emits utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde::Serialize;

    #[derive(Serialize)]
    struct Sample {
        x: f64,
        name: &'static str,
        k: u32,
    }

    #[test]
    fn floats_carry_seventeen_digits() {
        let s = to_json_string(&Sample {
            x: 0.1,
            name: "a",
            k: 3,
        })
        .unwrap();
        assert_eq!(s, "{\"x\":1.0000000000000001e-1,\"name\":\"a\",\"k\":3}\n");
    }

    #[test]
    fn output_parses_back() {
        let s = to_json_string(&vec![1.5f64, 2.25, 1e-300]).unwrap();
        let v: Vec<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(v, vec![1.5, 2.25, 1e-300]);
    }
}
