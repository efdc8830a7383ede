"""End-to-end decision pipeline with oracle-verified evidence.

A shape is amalgamable over every category with the amalgamation and joint
embedding properties exactly when it is upward-simply-connected: its monic
reflection is a preorder whose skeleton poset is forest-like.  Positive
verdicts carry the decomposition certificate; negative verdicts carry a
concrete cocone-free diagram checked against the colimit oracle before the
verdict is emitted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import (
    Cocone,
    Collision,
    FinInjDiagram,
    ShapeAnalysis,
    analyze_shape,
    has_cocone,
    witness_no_cocone,
)
from .fincat import FinCategory, connected_components
from .poset import ForestCertificate, NonForestWitness


@dataclass
class CertificateEvidence:
    analysis: ShapeAnalysis
    certificate: ForestCertificate
    demo_cocone: Cocone | None = None


@dataclass
class RefutationEvidence:
    analysis: ShapeAnalysis
    reason: str  # "parallel-pair" or "non-forest-poset"
    parallel_pair: tuple[int, int] | None
    witness: NonForestWitness | None
    diagram: FinInjDiagram
    collision: Collision


@dataclass
class Verdict:
    usc: bool
    connected: bool
    amalgamable_ap_jep: bool
    amalgamable_ap_only: bool
    evidence: CertificateEvidence | RefutationEvidence
    trace: tuple[str, ...]


def decide(shape: FinCategory) -> Verdict:
    """Decide amalgamability of the shape, with evidence."""
    trace = [
        f"shape: {len(shape.objects)} objects, {len(shape.morphisms)} morphisms"
    ]
    parts = connected_components(shape)
    connected = len(parts) == 1
    trace.append(f"connected components: {len(parts)}")

    analysis = analyze_shape(shape)
    trace.append(
        "monic reflection: "
        f"{len(shape.morphisms)} -> {len(analysis.reflection.morphisms)} morphisms"
    )
    if analysis.preorder:
        trace.append(
            f"reflection is a preorder; skeleton poset has "
            f"{len(analysis.skeleton)} elements"
        )
        if isinstance(analysis.forest, ForestCertificate):
            trace.append("skeleton is forest-like: certificate found")
        else:
            w = analysis.forest
            trace.append(
                "skeleton is not forest-like: up-set of "
                f"{analysis.skeleton.elements[w.x]} splits into "
                f"{len(w.upset_components)} pieces"
            )
    else:
        f, g = analysis.parallel_pair
        trace.append(
            "reflection is not a preorder: parallel pair "
            f"{analysis.reflection.morphisms[f].name}, "
            f"{analysis.reflection.morphisms[g].name}"
        )

    if analysis.usc:
        evidence = CertificateEvidence(analysis, analysis.forest)
        usc = True
        trace.append("verdict: amalgamable (certificate attached)")
    else:
        diagram = witness_no_cocone(shape, analysis)
        answer = has_cocone(diagram)
        if answer:
            raise RuntimeError("witness verification failed")
        reason = "parallel-pair" if not analysis.preorder else "non-forest-poset"
        evidence = RefutationEvidence(
            analysis,
            reason,
            analysis.parallel_pair,
            analysis.forest if analysis.preorder else None,
            diagram,
            answer.collision,
        )
        usc = False
        trace.append("verdict: not amalgamable (cocone-free diagram attached)")

    return Verdict(
        usc=usc,
        connected=connected,
        amalgamable_ap_jep=usc,
        amalgamable_ap_only=usc and connected,
        evidence=evidence,
        trace=tuple(trace),
    )


def _describe_node(node, poset, indent: int) -> list[str]:
    pad = "  " * indent
    lines = [f"{pad}adjoin {poset.elements[node.point]}"]
    for child, upset in zip(node.children, node.upsets):
        names = ", ".join(sorted(poset.elements[e] for e in upset))
        lines.append(f"{pad}  below upward-closed set {{{names}}}:")
        lines.extend(_describe_node(child, poset, indent + 2))
    return lines


def explain(verdict: Verdict) -> str:
    """Human-readable derivation of a verdict."""
    lines = ["amalgamability report", "=" * 21, ""]
    lines.extend(f"- {step}" for step in verdict.trace)
    lines.append("")
    shape = verdict.evidence.analysis.shape
    if not shape.objects:
        lines.append(
            "The shape is empty: the empty diagram is completed by any object, "
            "so a category needs the joint embedding property (hence an object) "
            "but not the amalgamation property alone."
        )
    if isinstance(verdict.evidence, CertificateEvidence):
        cert = verdict.evidence.certificate
        poset = verdict.evidence.analysis.skeleton
        if cert.roots:
            lines.append("decomposition (innermost steps first applied):")
            for root in cert.roots:
                lines.extend(_describe_node(root, poset, 1))
    else:
        ev = verdict.evidence
        if ev.reason == "parallel-pair":
            f, g = ev.parallel_pair
            refl = ev.analysis.reflection
            lines.append(
                "The monic reflection keeps the distinct parallel morphisms "
                f"{refl.morphisms[f].name} and {refl.morphisms[g].name}; the "
                "attached diagram glues them in its colimit."
            )
        else:
            w = ev.witness
            poset = ev.analysis.skeleton
            pieces = [
                "{" + ", ".join(sorted(poset.elements[e] for e in part)) + "}"
                for part in w.upset_components
            ]
            lines.append(
                f"Minimal element {poset.elements[w.x]} sees its up-set split "
                f"into disconnected pieces {' and '.join(pieces)} inside one "
                "component of the remaining poset."
            )
        col = ev.collision
        lines.append(
            f"Oracle: elements {col.x} and {col.y} of "
            f"{shape.objects[col.obj]} are glued in the colimit, so no leg "
            "can stay injective."
        )
    flags = (
        f"upward-simply-connected: {verdict.usc}; connected: {verdict.connected}; "
        f"amalgamable with AP+JEP: {verdict.amalgamable_ap_jep}; "
        f"amalgamable with AP alone: {verdict.amalgamable_ap_only}"
    )
    lines.extend(["", flags])
    return "\n".join(lines)
