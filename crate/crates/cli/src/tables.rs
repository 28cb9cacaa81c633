use chomp_core::closed_forms::{bipartite_value, forest_value, gmk_value, Parity};

pub struct Table {
    pub title: &'static str,
    pub corner: &'static str,
    pub columns: Vec<String>,
    pub rows: Vec<(String, Vec<u32>)>,
}

pub fn forest_table() -> Table {
    let cell = |v: usize, c: usize| forest_value(v, c).exact_value().unwrap();
    Table {
        title: "forest nim-values",
        corner: "vertices\\components",
        columns: vec!["even".into(), "odd".into()],
        rows: vec![
            ("even".into(), vec![cell(2, 2), cell(2, 1)]),
            ("odd".into(), vec![cell(1, 2), cell(1, 1)]),
        ],
    }
}

pub fn bipartite_table() -> Table {
    let cell = |v, e| bipartite_value(v, e).exact_value().unwrap();
    Table {
        title: "bipartite nim-values",
        corner: "vertices\\edges",
        columns: vec!["even".into(), "odd".into()],
        rows: vec![
            ("even".into(), vec![cell(Parity::Even, Parity::Even), cell(Parity::Even, Parity::Odd)]),
            ("odd".into(), vec![cell(Parity::Odd, Parity::Even), cell(Parity::Odd, Parity::Odd)]),
        ],
    }
}

pub fn gmk_table(max: usize) -> Table {
    Table {
        title: "g(m,k)",
        corner: "m\\k",
        columns: (1..=max).map(|k| k.to_string()).collect(),
        rows: (1..=max)
            .map(|m| (m.to_string(), (1..=max).map(|k| gmk_value(m, k).exact_value().unwrap()).collect()))
            .collect(),
    }
}

/// `g(3a+1, 3b+1)` for `a, b < size`.
pub fn block_table(size: usize) -> Table {
    Table {
        title: "g(3a+1,3b+1)",
        corner: "a\\b",
        columns: (0..size).map(|b| b.to_string()).collect(),
        rows: (0..size)
            .map(|a| {
                let row = (0..size).map(|b| gmk_value(3 * a + 1, 3 * b + 1).exact_value().unwrap()).collect();
                (a.to_string(), row)
            })
            .collect(),
    }
}

pub fn render_text(t: &Table) -> String {
    let mut cells: Vec<Vec<String>> = vec![std::iter::once(t.corner.to_string()).chain(t.columns.iter().cloned()).collect()];
    for (label, row) in &t.rows {
        cells.push(std::iter::once(label.clone()).chain(row.iter().map(|v| v.to_string())).collect());
    }
    let widths: Vec<usize> =
        (0..cells[0].len()).map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0)).collect();
    let mut out = format!("# {}\n", t.title);
    for r in &cells {
        let line: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        out.push_str(line.join(" ").trim_end());
        out.push('\n');
    }
    out
}

pub fn render_csv(t: &Table) -> String {
    let mut out = String::new();
    out.push_str(&std::iter::once(t.corner.to_string()).chain(t.columns.iter().cloned()).collect::<Vec<_>>().join(","));
    out.push('\n');
    for (label, row) in &t.rows {
        let vals: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("{label},{}\n", vals.join(",")));
    }
    out
}
