"""End-to-end two-oscillator scenario: pipeline, presets, sweeps, reports.

The pipeline follows the constrained-quantization route on the 8-generator
phase space (th1..th4, pi1..pi4):

    deformed Poisson tensor (coupling 4c/hbar)
      -> constraints x_a = pi_a + (i/2) th_a, classified second-class
      -> bracket matrix and inverse
      -> Dirac brackets, constraints imposed strongly
      -> star-product form (derived from the Dirac matrix when c = d,
         assembled directly for independent c, d)
      -> Hamiltonian -i omega (t1 t3 + t2 t4), split into commuting halves
      -> joint star-genvalue solve, Wigner projectors and energies
      -> reduced states on both generator pairs, spectra, entropies
      -> Fock-space cross-checks.

Reports are plain dicts with deterministic ordering (the only run-dependent
field is ``timestamp``); sweeps emit CSV rows with 12 significant digits and
closed-form reference columns next to the pipeline values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .algebra import GrassmannAlgebra, GrassmannElement, monomial_indices
from .brackets import (
    ConstraintClass,
    ConstraintSet,
    classify_constraints,
    constraint_matrix,
    dirac_bracket,
    impose_constraints_strongly,
    nac_tensor,
    quantization_form,
)
from .fock import (
    HolomorphicPairing,
    clifford_representation,
    holomorphic_transform,
    oracle_star,
    weyl_quantize,
)
from .spectral import star_genvalue_solve
from .star import build_star_product, nac_form, star
from .states import (
    Bipartition,
    IndefiniteStateError,
    closed_form_entanglement,
    entropy_abs,
    partial_trace,
    reduced_state,
    renyi_entropy,
    state_spectrum,
)

__all__ = [
    "ConfigError",
    "ScenarioConfig",
    "ScenarioError",
    "SweepSpec",
    "oscillator_hamiltonian",
    "hamiltonian_split",
    "phase_space_algebra",
    "reduced_theta_algebra",
    "run_scenario",
    "run_sweep",
    "write_sweep_csv",
]

THETA_LABELS = ("th1", "th2", "th3", "th4")
PI_LABELS = ("pi1", "pi2", "pi3", "pi4")
STATE_KEYS = {"++": "pp", "+-": "pm", "-+": "mp", "--": "mm"}
SWEEP_QUANTITIES = ("ep_pp", "ep_pm", "energies", "p1", "p2")


class ConfigError(ValueError):
    """Invalid scenario or sweep configuration."""


class ScenarioError(RuntimeError):
    """Pipeline failure, tagged with the stage that raised it."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage {stage!r} failed: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass
class ScenarioConfig:
    """Physical parameters of a run; |c| and |d| must stay below hbar."""

    hbar: float = 1.0
    omega: float = 1.0
    c: float = 0.0
    d: float = 0.0
    renyi_alpha: float | None = None
    out: str | None = None

    def __post_init__(self):
        if self.hbar <= 0:
            raise ConfigError("hbar must be positive")
        if self.omega <= 0:
            raise ConfigError("omega must be positive")
        if abs(self.c) >= self.hbar or abs(self.d) >= self.hbar:
            raise ConfigError("deformation parameters need |c| < hbar and |d| < hbar")
        if self.renyi_alpha is not None:
            if self.renyi_alpha <= 0 or self.renyi_alpha == 1:
                raise ConfigError("renyi_alpha must be positive and not 1")

    def replace(self, **kwargs) -> "ScenarioConfig":
        data = self.to_dict()
        data.update(kwargs)
        return ScenarioConfig(**data)

    def to_dict(self) -> dict:
        return {
            "hbar": self.hbar,
            "omega": self.omega,
            "c": self.c,
            "d": self.d,
            "renyi_alpha": self.renyi_alpha,
            "out": self.out,
        }

    @classmethod
    def from_file(cls, path: str) -> "ScenarioConfig":
        """Load from JSON or from key=value lines ('#' starts a comment)."""
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
        stripped = text.lstrip()
        if stripped.startswith("{"):
            raw = json.loads(text)
        else:
            raw = {}
            for lineno, line in enumerate(text.splitlines(), 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError(f"line {lineno}: expected key=value")
                key, value = (part.strip() for part in line.split("=", 1))
                raw[key] = value
        known = {"hbar", "omega", "c", "d", "renyi_alpha", "out"}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        kwargs = {}
        for key, value in raw.items():
            if key == "out":
                kwargs[key] = None if value in (None, "") else str(value)
            elif value is None:
                kwargs[key] = None
            else:
                try:
                    kwargs[key] = float(value)
                except (TypeError, ValueError) as exc:
                    raise ConfigError(f"config key {key!r}: {exc}") from exc
        return cls(**kwargs)


def phase_space_algebra() -> GrassmannAlgebra:
    """8-generator odd phase space (th1..th4, pi1..pi4)."""
    return GrassmannAlgebra(THETA_LABELS + PI_LABELS)


def reduced_theta_algebra() -> GrassmannAlgebra:
    """4-generator algebra of the surviving coordinates."""
    return GrassmannAlgebra(THETA_LABELS)


def oscillator_hamiltonian(algebra: GrassmannAlgebra, omega: float) -> GrassmannElement:
    """-i omega (t1 t3 + t2 t4), the two-oscillator Hamilton function."""
    t = {k: algebra.generator(f"th{k}") for k in (1, 2, 3, 4)}
    return (-1j * omega) * (t[1] * t[3] + t[2] * t[4])


def hamiltonian_split(
    algebra: GrassmannAlgebra, omega: float
) -> tuple[GrassmannElement, GrassmannElement]:
    """Commuting halves H+ and H- whose sum is the Hamiltonian."""
    t = {k: algebra.generator(f"th{k}") for k in (1, 2, 3, 4)}
    sym = t[1] * t[3] + t[2] * t[4]
    cross = t[1] * t[4] + t[2] * t[3]
    h_plus = (-0.5j * omega) * (sym + cross)
    h_minus = (-0.5j * omega) * (sym - cross)
    return h_plus, h_minus


def _element_coefficients(f: GrassmannElement) -> list:
    """JSON form of an element: [[1-based indices], re, im], sorted."""
    rows = []
    for mask in sorted(f.terms(), key=lambda m: (m.bit_count(), m)):
        coeff = f.terms()[mask]
        rows.append(
            [[i + 1 for i in monomial_indices(mask)], coeff.real, coeff.imag]
        )
    return rows


@dataclass
class PipelineResult:
    """Everything the scenario computes before serialization."""

    config: ScenarioConfig
    algebra: GrassmannAlgebra
    product: object
    hamiltonian: GrassmannElement
    h_plus: GrassmannElement
    h_minus: GrassmannElement
    resolution: object
    projectors: dict = field(default_factory=dict)  # key "pp" etc.
    energies: dict = field(default_factory=dict)
    reduced: dict = field(default_factory=dict)  # key -> {"th1_th3": el, ...}
    spectra: dict = field(default_factory=dict)
    entropies: dict = field(default_factory=dict)
    bracket_info: dict = field(default_factory=dict)
    derived_form: object = None


def _build_star_form(cfg: ScenarioConfig, bracket_info: dict):
    """Star form via the Dirac route at c = d, assembled directly otherwise.

    The bracket machinery runs either way (with coupling 4c/hbar) so the
    report always carries the constraint analysis.
    """
    phase = phase_space_algebra()
    coupling = 4.0 * cfg.c / cfg.hbar
    tensor = nac_tensor(phase, coupling)
    chis = [
        phase.generator(p) + 0.5j * phase.generator(t)
        for t, p in zip(THETA_LABELS, PI_LABELS)
    ]
    cset = ConstraintSet.from_elements(chis)
    classification = classify_constraints(cset, tensor)
    if classification != ConstraintClass.SECOND_CLASS:
        raise ConfigError("constraints are not second-class for these parameters")
    cmat = constraint_matrix(cset, tensor)

    size = len(cset)
    prod_residual = 0.0
    for a in range(size):
        for b in range(size):
            prod = sum(
                (cmat.entries[a][k] * cmat.inverse[k][b] for k in range(size)),
                phase.zero(),
            )
            expect = phase.one() if a == b else phase.zero()
            prod_residual = max(prod_residual, (prod - expect).norm_inf())

    theta_gens = [phase.generator(name) for name in THETA_LABELS]
    dmat = np.array(
        [
            [
                dirac_bracket(ta, tb, cset, tensor, cmat).scalar_part()
                for tb in theta_gens
            ]
            for ta in theta_gens
        ]
    )
    # strong imposition sends every constraint to zero in the reduced algebra
    reduced = reduced_theta_algebra()
    chi_residual = max(
        impose_constraints_strongly(
            chi, list(THETA_LABELS), list(PI_LABELS), reduced
        ).norm_inf()
        for chi in chis
    )

    derived_form = quantization_form(cset, tensor, cfg.hbar, list(THETA_LABELS), cmat)
    direct_form = nac_form(reduced, cfg.hbar, cfg.c, cfg.d)

    bracket_info.update(
        {
            "classification": classification.value,
            "coupling": coupling,
            "inverse_residual": prod_residual,
            "dirac_diagonal": dmat[0, 0],
            "dirac_ratio": (dmat[0, 1] / dmat[0, 0]).real if dmat[0, 0] else None,
            "strong_constraint_residual": chi_residual,
            "derived_vs_direct_form": float(
                np.max(np.abs(derived_form.matrix - direct_form.matrix))
            )
            if cfg.c == cfg.d
            else None,
        }
    )
    form = derived_form if cfg.c == cfg.d else direct_form
    return form, derived_form


def run_pipeline(cfg: ScenarioConfig, with_brackets: bool = True) -> PipelineResult:
    """Run the physics pipeline; raises ScenarioError tagged with the stage."""
    bracket_info: dict = {}
    stage = "bracket-derivation"
    try:
        if with_brackets:
            form, derived = _build_star_form(cfg, bracket_info)
        else:
            form = nac_form(reduced_theta_algebra(), cfg.hbar, cfg.c, cfg.d)
            derived = None
        algebra = form.algebra
        product = build_star_product(form)

        stage = "hamiltonian"
        hamiltonian = oscillator_hamiltonian(algebra, cfg.omega)
        h_plus, h_minus = hamiltonian_split(algebra, cfg.omega)

        stage = "genvalue-solve"
        resolution = star_genvalue_solve([h_plus, h_minus], product)

        result = PipelineResult(
            cfg, algebra, product, hamiltonian, h_plus, h_minus, resolution
        )
        result.bracket_info = bracket_info
        result.derived_form = derived
        for entry in resolution.entries:
            key = STATE_KEYS[entry.label]
            result.projectors[key] = entry.projector
            result.energies[key] = float(entry.value.real)

        stage = "reduced-states"
        bip13 = Bipartition.from_labels(algebra, ("th1", "th3"))
        bip24 = Bipartition.from_labels(algebra, ("th2", "th4"))
        for key, w in result.projectors.items():
            red13 = partial_trace(w, bip13.traced_indices, cfg.hbar)
            red24 = partial_trace(w, bip24.traced_indices, cfg.hbar)
            result.reduced[key] = {"th1_th3": red13, "th2_th4": red24}
            red_el, red_product = reduced_state(w, bip13, product)
            result.spectra[key] = state_spectrum(red_el, red_product)

        stage = "entropies"
        for key in result.projectors:
            result.entropies[f"ep_{key}"] = entropy_abs(result.spectra[key])
        return result
    except ScenarioError:
        raise
    except Exception as exc:
        raise ScenarioError(stage, exc) from exc


def _fock_check(result: PipelineResult) -> dict:
    """Operator-formalism residuals for the finished pipeline."""
    cfg = result.config
    rep = clifford_representation(result.product.form)
    worst = rep.anticommutator_residual()

    rng = np.random.default_rng(2022)
    for _ in range(20):
        f = GrassmannElement(
            result.algebra,
            {m: complex(rng.standard_normal(), rng.standard_normal()) for m in range(16)},
        )
        g = GrassmannElement(
            result.algebra,
            {m: complex(rng.standard_normal(), rng.standard_normal()) for m in range(16)},
        )
        diff = oracle_star(rep, f, g) - star(f, g, result.product)
        worst = max(worst, diff.norm_inf())

    matrix_h = rep.represent(result.hamiltonian)
    fock_energies = np.sort(np.linalg.eigvalsh(matrix_h))
    star_energies = np.sort([result.energies[k] for k in result.energies])
    worst = max(worst, float(np.max(np.abs(fock_energies - star_energies))))

    pairing = HolomorphicPairing.of(result.algebra, [("th1", "th3")], cfg.hbar)
    for key, spectrum in result.spectra.items():
        red = result.reduced[key]["th1_th3"]
        holo = holomorphic_transform(red, pairing)
        eigs = np.sort(np.linalg.eigvals(weyl_quantize(holo, 1)).real)[::-1]
        worst = max(worst, float(np.max(np.abs(eigs - np.array(spectrum)))))
    return {"max_residual": worst}


def run_scenario(cfg: ScenarioConfig) -> dict:
    """Full scenario report as a JSON-serializable dict."""
    import datetime

    result = run_pipeline(cfg, with_brackets=True)
    stage = "fock-check"
    try:
        fock_info = _fock_check(result)
    except Exception as exc:
        raise ScenarioError(stage, exc) from exc

    report = {
        "config": {
            "hbar": cfg.hbar,
            "omega": cfg.omega,
            "c": cfg.c,
            "d": cfg.d,
            "renyi_alpha": cfg.renyi_alpha,
        },
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "energies": [
            {"label": label, "value": result.energies[STATE_KEYS[label]]}
            for label in ("++", "+-", "-+", "--")
        ],
        "wigner": {
            key: _element_coefficients(w) for key, w in result.projectors.items()
        },
        "reduced": {
            key: {
                block: _element_coefficients(el)
                for block, el in blocks.items()
            }
            for key, blocks in result.reduced.items()
        },
        "spectra": dict(sorted(result.spectra.items())),
        "entropies": dict(sorted(result.entropies.items())),
        "fock_check": fock_info,
        "bracket_check": {
            k: (v if not isinstance(v, complex) else [v.real, v.imag])
            for k, v in result.bracket_info.items()
        },
    }
    if cfg.renyi_alpha is not None:
        report["renyi"] = _renyi_section(result, cfg.renyi_alpha)
    return report


def _renyi_section(result: PipelineResult, alpha: float) -> dict:
    wigner = {}
    reduced = {}
    for key, w in result.projectors.items():
        wigner[key] = renyi_entropy(w, alpha, result.product)
        bip = Bipartition.from_labels(result.algebra, ("th1", "th3"))
        red_el, red_product = reduced_state(w, bip, result.product)
        try:
            reduced[key] = renyi_entropy(red_el, alpha, red_product)
        except IndefiniteStateError:
            reduced[key] = "indefinite"
    return {"alpha": alpha, "wigner": wigner, "reduced": reduced}


@dataclass
class SweepSpec:
    """Parameter sweep over c or d, optionally linked (c=d or c=-d)."""

    parameter: str = "c"
    link: str | None = "c=d"
    start: float = -0.9
    stop: float = 0.9
    steps: int = 181
    quantities: tuple = ("ep_pp", "ep_pm")

    def __post_init__(self):
        if self.parameter not in ("c", "d"):
            raise ConfigError("sweep parameter must be 'c' or 'd'")
        if self.link not in (None, "c=d", "c=-d"):
            raise ConfigError("link must be omitted, 'c=d' or 'c=-d'")
        if self.steps < 1 or (self.steps == 1 and self.start != self.stop):
            raise ConfigError("need steps >= 2, or steps == 1 with start == stop")
        if self.steps > 1 and not self.start < self.stop:
            raise ConfigError("sweep needs start < stop")
        bad = [q for q in self.quantities if q not in SWEEP_QUANTITIES]
        if bad:
            raise ConfigError(f"unknown sweep quantities: {bad}")

    def values(self) -> np.ndarray:
        if self.steps == 1:
            return np.array([self.start])
        return np.linspace(self.start, self.stop, self.steps)

    def columns(self) -> list[str]:
        cols = [f"{self.parameter}_over_hbar"]
        for q in self.quantities:
            if q == "energies":
                cols += ["e_pp", "e_pm", "e_mp", "e_mm"]
            else:
                cols.append(q)
                if q in ("ep_pp", "ep_pm"):
                    cols.append(f"{q}_closed")
        return cols


def run_sweep(spec: SweepSpec, cfg: ScenarioConfig) -> list[dict]:
    """One row per grid point, computed by the full spectral pipeline, with
    closed-form reference values alongside the entropy columns."""
    rows = []
    for value in spec.values():
        params = {"c": cfg.c, "d": cfg.d}
        params[spec.parameter] = float(value)
        if spec.link == "c=d":
            other = "d" if spec.parameter == "c" else "c"
            params[other] = float(value)
        elif spec.link == "c=-d":
            other = "d" if spec.parameter == "c" else "c"
            params[other] = -float(value)
        if abs(params["c"]) >= cfg.hbar or abs(params["d"]) >= cfg.hbar:
            raise ConfigError(
                f"sweep value {value} leaves the domain |c|,|d| < hbar"
            )
        point_cfg = cfg.replace(c=params["c"], d=params["d"])
        result = run_pipeline(point_cfg, with_brackets=False)
        row = {f"{spec.parameter}_over_hbar": float(value) / cfg.hbar}
        for q in spec.quantities:
            if q == "energies":
                for key in ("pp", "pm", "mp", "mm"):
                    row[f"e_{key}"] = result.energies[key]
            elif q in ("ep_pp", "ep_pm"):
                key = q.split("_")[1]
                row[q] = result.entropies[f"ep_{key}"]
                label = {"pp": "++", "pm": "+-"}[key]
                row[f"{q}_closed"] = closed_form_entanglement(
                    label, point_cfg.hbar, point_cfg.c, point_cfg.d
                )
            elif q in ("p1", "p2"):
                spectrum = result.spectra["pp"]
                row[q] = spectrum[0] if q == "p1" else spectrum[1]
        rows.append(row)
    return rows


def write_sweep_csv(rows: list[dict], spec: SweepSpec, path: str):
    """CSV with a fixed column order and 12-significant-digit floats."""
    cols = spec.columns()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(cols) + "\n")
        for row in rows:
            fh.write(",".join(_format_cell(row.get(col)) for col in cols) + "\n")


def _format_cell(value) -> str:
    if value is None:
        return ""
    return f"{value:.12g}"


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)
