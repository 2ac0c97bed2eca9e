//! Fixed-width ASCII tables.

use designlab::feasibility::ParamCandidate;
use designlab::{Check, Relation};

fn symbol(r: Relation) -> &'static str {
    match r {
        Relation::Eq => "=",
        Relation::Ne => "!=",
        Relation::Lt => "<",
        Relation::Le => "<=",
        Relation::Gt => ">",
        Relation::Divides => "|",
        Relation::NotDivides => "!|",
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    out += &line(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

pub fn checks(list: &[Check]) -> String {
    let rows: Vec<Vec<String>> = list
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                c.lhs.to_string(),
                symbol(c.relation).to_string(),
                c.rhs.to_string(),
                if c.pass { "PASS" } else { "FAIL" }.to_string(),
            ]
        })
        .collect();
    table(&["check", "lhs", "rel", "rhs", "result"], &rows)
}

pub fn key_values(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    pairs.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

pub fn candidates(list: &[ParamCandidate], with_condition: bool) -> String {
    let mut header = vec!["family", "k0", "z", "A", "v0", "v1", "k1", "k", "v", "r", "b"];
    if with_condition {
        header.push("condition");
    }
    let rows: Vec<Vec<String>> = list
        .iter()
        .map(|c| {
            let mut row = vec![
                c.family.to_string(),
                c.k0.to_string(),
                c.z.to_string(),
                c.a.to_string(),
                c.v0.to_string(),
                c.v1.to_string(),
                c.k1.to_string(),
                c.k.to_string(),
                c.v.to_string(),
                c.r.to_string(),
                c.b.map(|b| b.to_string()).unwrap_or_else(|| "-".into()),
            ];
            if with_condition {
                row.push(c.condition.clone());
            }
            row
        })
        .collect();
    table(&header, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_align() {
        let t = table(&["a", "bb"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    bb\n---  --\nxyz  1\n");
    }

    #[test]
    fn check_rows() {
        let t = checks(&[Check::eq("x = y", 3u32, 3u32)]);
        assert!(t.lines().nth(2).unwrap().ends_with("PASS"));
    }
}
