//! `e,m,omega0,n[,c]` material specifications.

use thinsheet::SheetMaterial;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MaterialSpecError {
    #[error("material needs 4 or 5 comma-separated values e,m,omega0,n[,c], got {0}")]
    FieldCount(usize),
    #[error("material field `{field}` is not a number: `{text}`")]
    BadNumber { field: &'static str, text: String },
    #[error(transparent)]
    Invalid(#[from] thinsheet::Error),
}

const FIELDS: [&str; 5] = ["e", "m", "omega0", "n", "c"];

/// Parses `e,m,omega0,n[,c]`; `c` defaults to 1.
pub fn parse_material(text: &str) -> Result<SheetMaterial, MaterialSpecError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 4 && parts.len() != 5 {
        return Err(MaterialSpecError::FieldCount(parts.len()));
    }
    let mut vals = [0.0, 0.0, 0.0, 0.0, 1.0];
    for (i, part) in parts.iter().enumerate() {
        vals[i] = part.parse().map_err(|_| MaterialSpecError::BadNumber {
            field: FIELDS[i],
            text: part.to_string(),
        })?;
    }
    let [e, m, w0, n, c] = vals;
    Ok(SheetMaterial::new(e, m, w0, n, c)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_and_five_fields() {
        let m = parse_material("1,1,10,1").unwrap();
        assert_eq!(m.oscillator_frequency(), 10.0);
        assert_eq!(m.light_speed(), 1.0);
        let m = parse_material("4.8e-10, 9.1e-28, 1e15, 1e15, 3e10").unwrap();
        assert_eq!(m.light_speed(), 3e10);
    }

    #[test]
    fn rejects() {
        assert_eq!(parse_material("1,2,3"), Err(MaterialSpecError::FieldCount(3)));
        assert!(matches!(
            parse_material("1,x,3,4"),
            Err(MaterialSpecError::BadNumber { field: "m", .. })
        ));
        assert!(matches!(parse_material("1,-1,3,4"), Err(MaterialSpecError::Invalid(_))));
        assert!(matches!(
            parse_material("1,1,3,nan"),
            Err(MaterialSpecError::Invalid(_))
        ));
    }
}
