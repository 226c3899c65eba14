//! Plain-text emission of the bound table (CSV and Markdown).
//!
//! Both renderers print exactly the numeric content of the JSON rows, so
//! the three formats can be diffed value-for-value.

use serde::Serialize;

/// One row of the bound table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub genus: u64,
    /// Block index of the genus decomposition.
    pub n: u64,
    /// Offset within the block.
    pub k: u64,
    /// Closed-form upper bound.
    pub closed_form: u64,
    /// Best bound found by the plan optimizer.
    pub optimized: u64,
}

const HEADERS: [&str; 5] = ["genus", "n", "k", "closed_form", "optimized"];

fn cells(row: &TableRow) -> [u64; 5] {
    [row.genus, row.n, row.k, row.closed_form, row.optimized]
}

/// CSV with a header row, `\n` line endings, no trailing blank line.
pub fn to_csv(rows: &[TableRow]) -> String {
    let mut out = HEADERS.join(",");
    out.push('\n');
    for row in rows {
        let line: Vec<String> = cells(row).iter().map(u64::to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// GitHub-style pipe table with a separator row.
pub fn to_markdown(rows: &[TableRow]) -> String {
    let mut widths: Vec<usize> = HEADERS.iter().map(|h| h.len()).collect();
    let rendered: Vec<[String; 5]> = rows
        .iter()
        .map(|row| cells(row).map(|c| c.to_string()))
        .collect();
    for row in &rendered {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let emit = |out: &mut String, cells: &[String]| {
        out.push('|');
        for (cell, w) in cells.iter().zip(&widths) {
            out.push(' ');
            out.push_str(cell);
            out.extend(std::iter::repeat(' ').take(w - cell.len() + 1));
            out.push('|');
        }
        out.push('\n');
    };
    let headers: Vec<String> = HEADERS.iter().map(|h| h.to_string()).collect();
    emit(&mut out, &headers);
    out.push('|');
    for w in &widths {
        out.push_str(&"-".repeat(w + 2));
        out.push('|');
    }
    out.push('\n');
    for row in &rendered {
        emit(&mut out, row);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<TableRow> {
        vec![
            TableRow {
                genus: 6,
                n: 1,
                k: 0,
                closed_form: 3,
                optimized: 3,
            },
            TableRow {
                genus: 24,
                n: 2,
                k: 10,
                closed_form: 7,
                optimized: 7,
            },
        ]
    }

    #[test]
    fn csv_round_trips_numbers() {
        let text = to_csv(&sample());
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("genus,n,k,closed_form,optimized"));
        assert_eq!(lines.next(), Some("6,1,0,3,3"));
        assert_eq!(lines.next(), Some("24,2,10,7,7"));
        assert_eq!(lines.next(), None);
    }

    #[test]
    fn markdown_contains_every_value_and_aligns() {
        let text = to_markdown(&sample());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].contains("genus"));
        assert!(lines[1].chars().all(|c| c == '|' || c == '-'));
        assert!(lines[2].contains(" 6 "));
        assert!(lines[3].contains(" 24 "));
        assert!(lines[3].contains(" 10 "));
        let width = lines[0].len();
        assert!(lines.iter().all(|l| l.len() == width));
    }

    #[test]
    fn formats_agree_on_numeric_content() {
        let rows = sample();
        let csv = to_csv(&rows);
        let md = to_markdown(&rows);
        for row in &rows {
            for value in [row.genus, row.n, row.k, row.closed_form, row.optimized] {
                let needle = value.to_string();
                assert!(csv.contains(&needle));
                assert!(md.contains(&format!(" {needle} ")));
            }
        }
    }
}
