//! Mod-5 Rost invariant arithmetic on symbols `(x^i, y^j, z^l)` and the witness
//! that no power operation on `H¹(K, G)` can be functorial in `G` over every field.

use std::fmt;

/// Order of `H¹(K', E₈)`, identified with `Z/5` through the Rost invariant.
/// Taken as given, not computed.
pub const H1_E8_ORDER: u32 = 5;

pub const NO_FUNCTORIAL_POWER: &str = "no functorial power operation over this field";

/// Exponents of `(x^i, y^j, z^l)` in `H¹(K, μ₅)³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModFiveSymbol {
    pub i: u8,
    pub j: u8,
    pub l: u8,
}

fn r5(a: i64) -> u8 {
    a.rem_euclid(5) as u8
}

impl ModFiveSymbol {
    pub fn new(i: i64, j: i64, l: i64) -> Self {
        ModFiveSymbol {
            i: r5(i),
            j: r5(j),
            l: r5(l),
        }
    }

    pub fn add(self, o: Self) -> Self {
        Self::new(
            (self.i + o.i) as i64,
            (self.j + o.j) as i64,
            (self.l + o.l) as i64,
        )
    }

    pub fn scale(self, k: i64) -> Self {
        Self::new(k * self.i as i64, k * self.j as i64, k * self.l as i64)
    }

    /// All 125 symbols in lexicographic order.
    pub fn all() -> impl Iterator<Item = Self> {
        (0..125).map(|n| Self::new(n / 25, (n / 5) % 5, n % 5))
    }
}

impl fmt::Display for ModFiveSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.l)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `ρ = −(a)∪(b)∪(c)` for the split group.
    Rho,
    /// After twisting by `z`.
    Rho1,
    /// After the further twist by the image of `(x, y)`.
    Rho2,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Rho, Variant::Rho1, Variant::Rho2];
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Rho => "rho",
            Variant::Rho1 => "rho1",
            Variant::Rho2 => "rho2",
        })
    }
}

/// Value in `H³(K, μ₅^⊗3) ≅ Z/5`, as a residue in `[0, 5)`.
pub fn rost_value(variant: Variant, s: ModFiveSymbol) -> u8 {
    let (i, j, l) = (s.i as i64, s.j as i64, s.l as i64);
    match variant {
        Variant::Rho => r5(-i * j * l),
        Variant::Rho1 => r5(-i * j * (l + 1)),
        Variant::Rho2 => r5(-(i + 1) * (j + 1) * (l + 1) + 1),
    }
}

/// First pair `(a, b)` in lexicographic order with `f(a + b) ≠ f(a) + f(b)`.
pub fn additivity_counterexample(variant: Variant) -> Option<(ModFiveSymbol, ModFiveSymbol)> {
    ModFiveSymbol::all()
        .flat_map(|a| ModFiveSymbol::all().map(move |b| (a, b)))
        .find(|&(a, b)| {
            rost_value(variant, a.add(b)) != (rost_value(variant, a) + rost_value(variant, b)) % 5
        })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub checks: Vec<WitnessCheck>,
    /// Set to [`NO_FUNCTORIAL_POWER`] when every check passes.
    pub conclusion: Option<&'static str>,
    pub h1_e8_order: u32,
}

impl WitnessReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn verify_witness() -> WitnessReport {
    let rho = |s| rost_value(Variant::Rho, s);
    let rho2 = |s| rost_value(Variant::Rho2, s);
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(WitnessCheck {
            name: name.into(),
            passed,
            detail,
        })
    };

    let bad = ModFiveSymbol::all()
        .filter(|&s| rho(s.scale(2)) as u32 != (3 * rho(s) as u32) % 5)
        .count();
    push(
        "rho(2a,2b,2c) = 3 rho(a,b,c)",
        bad == 0,
        format!("125 symbols, {bad} failures"),
    );

    let one = ModFiveSymbol::new(1, 1, 1);
    let (v1, v2) = (rho(one), rho(one.scale(2)));
    push(
        "rho is not additive",
        v2 != (2 * v1) % 5,
        format!("rho(1,1,1) = {v1}, rho(2,2,2) = {v2}"),
    );

    let gamma = ModFiveSymbol::new(2, 1, 0);
    let g1 = rho2(gamma);
    push(
        "rho2(gamma) = 0",
        g1 == 0,
        format!("gamma = {gamma}, value {g1}"),
    );

    let g2 = rho2(gamma.scale(2));
    push(
        "rho2(2 gamma) != 0",
        g2 != 0,
        format!("2 gamma = {}, value {g2}", gamma.scale(2)),
    );

    for v in [Variant::Rho1, Variant::Rho2] {
        let cx = additivity_counterexample(v);
        push(
            &format!("{v} is not a homomorphism"),
            cx.is_some(),
            match cx {
                Some((a, b)) => format!("a = {a}, b = {b}"),
                None => "additive".into(),
            },
        );
    }

    let all = checks.iter().all(|c| c.passed);
    WitnessReport {
        checks,
        conclusion: all.then_some(NO_FUNCTORIAL_POWER),
        h1_e8_order: H1_E8_ORDER,
    }
}
