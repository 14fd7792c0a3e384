//! Plain-text persistence for character tables.
//!
//! ```text
//! gelfand-chartab v1
//! group S3
//! order 6
//! classes 3
//! sizes 1 3 2
//! representatives 0 1 3
//! degrees 1 1 2
//! row 1,0 1,0 1,0
//! row 1,0 -1,0 1,0
//! row 2,0 0,0 -1,0
//! end
//! ```
//!
//! Values are written with the shortest decimal form that reads back to the
//! same `f64`. A loaded table is always re-validated against the group.

use num_complex::Complex64;

use super::CharacterTable;
use crate::error::{GroupError, Result};
use crate::group::{conjugacy_classes, FiniteGroup, GroupElementId};

pub const CACHE_HEADER: &str = "gelfand-chartab v1";

fn bad(what: impl Into<String>) -> GroupError {
    GroupError::CacheFormat(what.into())
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

impl CharacterTable {
    pub fn to_cache_text(&self) -> String {
        let mut out = String::new();
        out.push_str(CACHE_HEADER);
        out.push('\n');
        out.push_str(&format!("group {}\n", self.descriptor));
        out.push_str(&format!("order {}\n", self.group_order));
        out.push_str(&format!("classes {}\n", self.classes.len()));
        out.push_str(&format!("sizes {}\n", join(self.classes.sizes())));
        out.push_str(&format!(
            "representatives {}\n",
            join(self.classes.representatives().iter().map(|g| g.index()))
        ));
        out.push_str(&format!("degrees {}\n", join(&self.degrees)));
        for row in &self.values {
            out.push_str(&format!(
                "row {}\n",
                join(row.iter().map(|v| format!("{},{}", v.re, v.im)))
            ));
        }
        out.push_str("end\n");
        out
    }

    /// Parses a cached table for `group`. The class structure is recomputed
    /// from the group and must match the document; the table must then pass
    /// [`CharacterTable::validate`].
    pub fn from_cache_text(group: &FiniteGroup, text: &str) -> Result<CharacterTable> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        if lines.next() != Some(CACHE_HEADER) {
            return Err(bad("missing or unsupported header"));
        }
        let mut field = |name: &str| -> Result<String> {
            let line = lines
                .next()
                .ok_or_else(|| bad(format!("missing `{name}`")))?;
            match line.split_once(' ') {
                Some((key, rest)) if key == name => Ok(rest.to_string()),
                None if line == name => Ok(String::new()),
                _ => Err(bad(format!("expected `{name}`, found `{line}`"))),
            }
        };
        let descriptor = field("group")?;
        let order: usize = field("order")?
            .parse()
            .map_err(|_| bad("order is not an integer"))?;
        let class_count: usize = field("classes")?
            .parse()
            .map_err(|_| bad("class count is not an integer"))?;
        let sizes = parse_ints(&field("sizes")?)?;
        let reps = parse_ints(&field("representatives")?)?;
        let degrees = parse_ints(&field("degrees")?)?
            .into_iter()
            .map(|d| d as u64)
            .collect::<Vec<_>>();
        let mut values = Vec::with_capacity(class_count);
        for _ in 0..class_count {
            values.push(parse_row(&field("row")?)?);
        }
        field("end")?;

        if descriptor != group.descriptor() || order != group.order() {
            return Err(bad(format!(
                "document describes {descriptor} of order {order}, not {} of order {}",
                group.descriptor(),
                group.order()
            )));
        }
        let classes = conjugacy_classes(group);
        let expected_reps: Vec<usize> = classes
            .representatives()
            .iter()
            .map(|g: &GroupElementId| g.index())
            .collect();
        if classes.len() != class_count || classes.sizes() != sizes || expected_reps != reps {
            return Err(bad("class structure does not match the group"));
        }
        let table = CharacterTable {
            descriptor,
            group_order: order,
            classes,
            degrees,
            values,
        };
        table.validate()?;
        Ok(table)
    }
}

fn parse_ints(s: &str) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| bad(format!("`{t}` is not an integer")))
        })
        .collect()
}

fn parse_row(s: &str) -> Result<Vec<Complex64>> {
    s.split_whitespace()
        .map(|t| {
            let (re, im) = t
                .split_once(',')
                .ok_or_else(|| bad(format!("`{t}` is not a re,im pair")))?;
            let re: f64 = re
                .parse()
                .map_err(|_| bad(format!("bad real part `{re}`")))?;
            let im: f64 = im
                .parse()
                .map_err(|_| bad(format!("bad imaginary part `{im}`")))?;
            Ok(Complex64::new(re, im))
        })
        .collect()
}
