//! A small finite-domain constraint counter: backtracking with
//! smallest-domain-first variable choice and forward checking. It knows
//! nothing about monoids, so counting solutions with it is independent of the
//! constructions under test.

type Check = Box<dyn Fn(&[usize]) -> bool>;

struct Constraint {
    vars: Vec<usize>,
    check: Check,
}

pub struct Csp {
    domain: usize,
    initial: Vec<u64>,
    constraints: Vec<Constraint>,
    watch: Vec<Vec<usize>>,
}

impl Csp {
    pub fn new(vars: usize, domain: usize) -> Self {
        assert!((1..=64).contains(&domain));
        let full = if domain == 64 { u64::MAX } else { (1u64 << domain) - 1 };
        Csp {
            domain,
            initial: vec![full; vars],
            constraints: Vec::new(),
            watch: vec![Vec::new(); vars],
        }
    }

    pub fn fix(&mut self, var: usize, value: usize) {
        self.initial[var] &= 1 << value;
    }

    pub fn constrain(&mut self, vars: Vec<usize>, check: impl Fn(&[usize]) -> bool + 'static) {
        let id = self.constraints.len();
        let mut distinct = vars.clone();
        distinct.sort_unstable();
        distinct.dedup();
        for v in distinct {
            self.watch[v].push(id);
        }
        self.constraints.push(Constraint {
            vars,
            check: Box::new(check),
        });
    }

    /// Up to `limit` solutions.
    pub fn solutions(&self, limit: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut values = vec![usize::MAX; self.initial.len()];
        let mut domains = self.initial.clone();
        // constraints over fixed variables only are never triggered by an assignment
        for v in 0..domains.len() {
            if domains[v].count_ones() == 1 {
                values[v] = domains[v].trailing_zeros() as usize;
            }
        }
        let consistent = self
            .constraints
            .iter()
            .all(|c| self.revise(c, &values, &mut domains));
        if consistent && domains.iter().all(|&d| d != 0) {
            self.search(&mut values, domains, limit, &mut out);
        }
        out
    }

    fn search(&self, values: &mut Vec<usize>, domains: Vec<u64>, limit: usize, out: &mut Vec<Vec<usize>>) {
        if out.len() >= limit {
            return;
        }
        let next = (0..values.len())
            .filter(|&v| values[v] == usize::MAX)
            .min_by_key(|&v| domains[v].count_ones());
        let Some(var) = next else {
            out.push(values.clone());
            return;
        };
        for value in 0..self.domain {
            if domains[var] & (1 << value) == 0 {
                continue;
            }
            values[var] = value;
            let mut local = domains.clone();
            local[var] = 1 << value;
            if self.watch[var]
                .iter()
                .all(|&c| self.revise(&self.constraints[c], values, &mut local))
            {
                self.search(values, local, limit, out);
            }
            values[var] = usize::MAX;
            if out.len() >= limit {
                return;
            }
        }
    }

    /// Check a constraint once fully assigned, or prune its one remaining
    /// variable. Returns false on a dead end.
    fn revise(&self, c: &Constraint, values: &[usize], domains: &mut [u64]) -> bool {
        let mut open = None;
        for &v in &c.vars {
            if values[v] == usize::MAX {
                match open {
                    None => open = Some(v),
                    Some(w) if w == v => {}
                    Some(_) => return true,
                }
            }
        }
        let mut scratch: Vec<usize> = c.vars.iter().map(|&v| values[v]).collect();
        match open {
            None => (c.check)(&scratch),
            Some(v) => {
                let mut keep = 0u64;
                for value in 0..self.domain {
                    if domains[v] & (1 << value) == 0 {
                        continue;
                    }
                    for (slot, &w) in scratch.iter_mut().zip(&c.vars) {
                        if w == v {
                            *slot = value;
                        }
                    }
                    if (c.check)(&scratch) {
                        keep |= 1 << value;
                    }
                }
                domains[v] = keep;
                keep != 0
            }
        }
    }
}
