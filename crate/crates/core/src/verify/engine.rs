//! Memoized evaluation of the library operations on isomorphism classes.
//!
//! Every value is a [`CanonicalForm`]; operations rebuild the diagonal
//! presentation, call the library function and cache the canonical form of the
//! result. All claims are iso-invariant, so nothing depends on the choice of
//! presentation.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::RwLock;

use crate::adic;
use crate::cohomology;
use crate::error::Result;
use crate::functors;
use crate::module::{
    direct_sum_in, ideal_power_submodule, quotient_by_ideal, CanonicalForm, Presentation,
};
use crate::ring::Ideal;

type Cf = CanonicalForm;

struct Memo<K, V> {
    map: RwLock<HashMap<K, V>>,
}

impl<K: Eq + Hash, V: Clone> Memo<K, V> {
    fn new() -> Self {
        Memo {
            map: RwLock::new(HashMap::new()),
        }
    }

    fn get(&self, key: K, compute: impl FnOnce() -> V) -> V {
        if let Some(v) = self.map.read().expect("memo lock").get(&key) {
            return v.clone();
        }
        let v = compute();
        self.map
            .write()
            .expect("memo lock")
            .entry(key)
            .or_insert(v)
            .clone()
    }
}

fn p(c: &Cf) -> Presentation {
    c.to_presentation()
}

fn cf(r: Result<Presentation>) -> Result<Cf> {
    r.map(|x| x.canonical().clone())
}

pub struct Engine {
    pub kmax: usize,
    hom: Memo<(Cf, Cf), Result<Cf>>,
    tensor: Memo<(Cf, Cf), Result<Cf>>,
    quotient: Memo<(Cf, Ideal), Result<Cf>>,
    gamma: Memo<(Cf, Ideal), Result<Cf>>,
    lambda: Memo<(Cf, Ideal), Result<Cf>>,
    gamma_gen: Memo<(Cf, Cf, Ideal), Result<Cf>>,
    lambda_gen: Memo<(Cf, Cf, Ideal), Result<Cf>>,
    dual: Memo<Cf, Result<Cf>>,
    reduced: Memo<(Cf, Ideal), Result<bool>>,
    coreduced: Memo<(Cf, Ideal), Result<bool>>,
    reduced_wrt: Memo<(Cf, Cf, Ideal), Result<bool>>,
    coreduced_wrt: Memo<(Cf, Cf, Ideal), Result<bool>>,
    complete: Memo<(Cf, Ideal), bool>,
    ext: Memo<(usize, Cf, Cf), Result<Cf>>,
    tor: Memo<(usize, Cf, Cf), Result<Cf>>,
    glc: Memo<(usize, Cf, Cf, Ideal), Result<Cf>>,
    glh: Memo<(usize, Cf, Cf, Ideal), Result<Cf>>,
    glc_stable: Memo<(usize, Cf, Cf, Ideal), Result<Cf>>,
    glh_stable: Memo<(usize, Cf, Cf, Ideal), Result<Cf>>,
}

impl Engine {
    pub fn new(kmax: usize) -> Self {
        Engine {
            kmax,
            hom: Memo::new(),
            tensor: Memo::new(),
            quotient: Memo::new(),
            gamma: Memo::new(),
            lambda: Memo::new(),
            gamma_gen: Memo::new(),
            lambda_gen: Memo::new(),
            dual: Memo::new(),
            reduced: Memo::new(),
            coreduced: Memo::new(),
            reduced_wrt: Memo::new(),
            coreduced_wrt: Memo::new(),
            complete: Memo::new(),
            ext: Memo::new(),
            tor: Memo::new(),
            glc: Memo::new(),
            glh: Memo::new(),
            glc_stable: Memo::new(),
            glh_stable: Memo::new(),
        }
    }

    pub fn hom(&self, m: &Cf, n: &Cf) -> Result<Cf> {
        self.hom.get((m.clone(), n.clone()), || {
            cf(functors::hom_module(&p(m), &p(n)))
        })
    }

    pub fn tensor(&self, m: &Cf, n: &Cf) -> Result<Cf> {
        self.tensor.get((m.clone(), n.clone()), || {
            cf(functors::tensor_module(&p(m), &p(n)))
        })
    }

    pub fn sum(&self, m: &Cf, n: &Cf) -> Result<Cf> {
        cf(direct_sum_in(m.ring, &[p(m), p(n)]))
    }

    /// `M/aM`.
    pub fn quotient(&self, m: &Cf, a: &Ideal) -> Result<Cf> {
        self.quotient
            .get((m.clone(), a.clone()), || cf(quotient_by_ideal(&p(m), a)))
    }

    /// `aX = 0`.
    pub fn killed_by(&self, x: &Cf, a: &Ideal) -> bool {
        ideal_power_submodule(&p(x), a, 1).is_zero()
    }

    pub fn gamma(&self, n: &Cf, a: &Ideal) -> Result<Cf> {
        self.gamma.get((n.clone(), a.clone()), || {
            Ok(adic::gamma(&p(n), a)?.value.canonical().clone())
        })
    }

    pub fn lambda(&self, n: &Cf, a: &Ideal) -> Result<Cf> {
        self.lambda.get((n.clone(), a.clone()), || {
            Ok(adic::lambda(&p(n), a, self.kmax)?.value.canonical().clone())
        })
    }

    pub fn gamma_gen(&self, m: &Cf, n: &Cf, a: &Ideal) -> Result<Cf> {
        self.gamma_gen.get((m.clone(), n.clone(), a.clone()), || {
            cf(adic::gamma_gen(&p(m), &p(n), a))
        })
    }

    pub fn lambda_gen(&self, m: &Cf, n: &Cf, a: &Ideal) -> Result<Cf> {
        self.lambda_gen.get((m.clone(), n.clone(), a.clone()), || {
            cf(adic::lambda_gen(&p(m), &p(n), a, self.kmax))
        })
    }

    pub fn dual(&self, n: &Cf) -> Result<Cf> {
        self.dual
            .get(n.clone(), || cf(functors::matlis_dual(&p(n))))
    }

    pub fn is_reduced(&self, n: &Cf, a: &Ideal) -> Result<bool> {
        self.reduced
            .get((n.clone(), a.clone()), || adic::is_reduced(&p(n), a))
    }

    pub fn is_coreduced(&self, n: &Cf, a: &Ideal) -> Result<bool> {
        self.coreduced
            .get((n.clone(), a.clone()), || adic::is_coreduced(&p(n), a))
    }

    pub fn is_reduced_wrt(&self, m: &Cf, n: &Cf, a: &Ideal) -> Result<bool> {
        self.reduced_wrt.get((m.clone(), n.clone(), a.clone()), || {
            adic::is_reduced_wrt(&p(m), &p(n), a)
        })
    }

    pub fn is_coreduced_wrt(&self, m: &Cf, n: &Cf, a: &Ideal) -> Result<bool> {
        self.coreduced_wrt
            .get((m.clone(), n.clone(), a.clone()), || {
                adic::is_coreduced_wrt(&p(m), &p(n), a)
            })
    }

    pub fn is_in_b(&self, m: &Cf, n: &Cf, a: &Ideal) -> Result<bool> {
        Ok(self.is_reduced_wrt(m, n, a)? && self.is_coreduced_wrt(m, n, a)?)
    }

    pub fn is_complete(&self, n: &Cf, a: &Ideal) -> bool {
        self.complete.get((n.clone(), a.clone()), || {
            cohomology::is_adically_complete(&p(n), a, self.kmax)
        })
    }

    pub fn ext(&self, i: usize, m: &Cf, n: &Cf) -> Result<Cf> {
        self.ext.get((i, m.clone(), n.clone()), || {
            cf(functors::ext(i, &p(m), &p(n)))
        })
    }

    pub fn tor(&self, i: usize, m: &Cf, n: &Cf) -> Result<Cf> {
        self.tor.get((i, m.clone(), n.clone()), || {
            cf(functors::tor(i, &p(m), &p(n)))
        })
    }

    pub fn glc(&self, i: usize, m: &Cf, n: &Cf, a: &Ideal) -> Result<Cf> {
        self.glc.get((i, m.clone(), n.clone(), a.clone()), || {
            cf(cohomology::glc(i, &p(m), &p(n), a, self.kmax))
        })
    }

    pub fn glh(&self, i: usize, m: &Cf, n: &Cf, a: &Ideal) -> Result<Cf> {
        self.glh.get((i, m.clone(), n.clone(), a.clone()), || {
            cf(cohomology::glh(i, &p(m), &p(n), a, self.kmax))
        })
    }

    /// `Ext^i(M/aM, N)`.
    pub fn glc_fast(&self, i: usize, m: &Cf, n: &Cf, a: &Ideal) -> Result<Cf> {
        self.ext(i, &self.quotient(m, a)?, n)
    }

    pub fn glc_stabilized(&self, i: usize, m: &Cf, n: &Cf, a: &Ideal) -> Result<Cf> {
        self.glc_stable
            .get((i, m.clone(), n.clone(), a.clone()), || {
                cf(cohomology::glc_stabilized(i, &p(m), &p(n), a, self.kmax))
            })
    }

    /// `Tor_i(M/aM, N)`.
    pub fn glh_fast(&self, i: usize, m: &Cf, n: &Cf, a: &Ideal) -> Result<Cf> {
        self.tor(i, &self.quotient(m, a)?, n)
    }

    pub fn glh_stabilized(&self, i: usize, m: &Cf, n: &Cf, a: &Ideal) -> Result<Cf> {
        self.glh_stable
            .get((i, m.clone(), n.clone(), a.clone()), || {
                cf(cohomology::glh_stabilized(i, &p(m), &p(n), a, self.kmax))
            })
    }
}
