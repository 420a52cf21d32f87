//! Canonical s-expression printer.

use core::fmt::{self, Display, Formatter};

use crate::syntax::{Ctx, SubS, Tm, Ty};

impl<S: Display> Display for Ty<S> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Ty::U(i) => write!(f, "(U {i})"),
            Ty::El(t) => write!(f, "(El {t})"),
            Ty::Pi(a, b) => write!(f, "(Pi {a} {b})"),
            Ty::Sigma(a, b) => write!(f, "(Sigma {a} {b})"),
            Ty::Top => f.write_str("Top"),
            Ty::Lift(a) => write!(f, "(Lift {a})"),
            Ty::Sub(a, s) => write!(f, "(tysub {a} {s})"),
        }
    }
}

impl<S: Display> Display for Tm<S> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Tm::Q => f.write_str("q"),
            Tm::Sub(t, s) => write!(f, "(tmsub {t} {s})"),
            Tm::Lam(t) => write!(f, "(lam {t})"),
            Tm::App(t, u) => write!(f, "(app {t} {u})"),
            Tm::Code(a) => write!(f, "(code {a})"),
            Tm::Mk(t) => write!(f, "(mk {t})"),
            Tm::Un(t) => write!(f, "(un {t})"),
            Tm::Tt => f.write_str("tt"),
            Tm::Pair(t, u) => write!(f, "(pair {t} {u})"),
            Tm::Fst(t) => write!(f, "(fst {t})"),
            Tm::Snd(t) => write!(f, "(snd {t})"),
        }
    }
}

impl Display for SubS {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            SubS::P => f.write_str("p"),
            SubS::Single(a) => write!(f, "(single {a})"),
            SubS::Plus(g) => write!(f, "(plus {g})"),
        }
    }
}

impl<S: Display> Display for Ctx<S> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str("(ctx")?;
        for a in &self.entries {
            write!(f, " {a}")?;
        }
        f.write_str(")")
    }
}
