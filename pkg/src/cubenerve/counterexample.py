"""A thin filler of an admissible box whose other faces are thin but one is not.

The 3-shell below lives in the nerve of ``counterexample_category()``.  Its
face d_1^- is the non-identity 2-cell A; every other face is thin, and the
box left by removing d_2^- is admissible.  So a thin filler of an admissible
box may have a non-thin face other than the one it was built to supply.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import chains, omega
from . import nerve as nv
from .categories import counterexample_category

# images of the 26 atoms of S^3; the six 2-dimensional ones carry the content
SHELL_IMAGES = {
    "---": "c", "--+": "c", "-+-": "d", "-++": "d",
    "+--": "c", "+-+": "e", "++-": "d", "+++": "e",
    "--*": "c", "-*-": "a+", "-*+": "a-", "-+*": "d",
    "*--": "c", "*-+": "ab", "*+-": "d", "*++": "b",
    "+-*": "ab", "+*-": "a+", "+*+": "e", "++*": "b",
    "-**": "A", "+**": "ab",
    "*-*": "ab", "*+*": "b",
    "**-": "a+", "**+": "ab",
}


@dataclass
class CounterexampleReport:
    shell_values: tuple          # images of d_2^- <u_3> and d_2^+ <u_3>
    filler_top: str
    filler_thin: bool
    face_tops: dict              # (i, sign) -> image of the top atom of that face
    thin_faces: dict             # (i, sign) -> bool
    box_admissible: bool
    refilled_box_matches: bool
    shell_admissible: bool

    @property
    def non_thin_faces(self):
        return sorted(k for k, v in self.thin_faces.items() if not v)

    @property
    def holds(self):
        return (self.filler_thin and self.non_thin_faces == [(1, "-")]
                and self.box_admissible and self.refilled_box_matches
                and self.shell_values == ("ab", "ab"))

    def to_json(self):
        return {
            "shell_values": list(self.shell_values),
            "filler_top": self.filler_top,
            "filler_thin": self.filler_thin,
            "faces": [{"face": f"d{i}{s}", "top": self.face_tops[i, s],
                       "thin": self.thin_faces[i, s]} for i, s in sorted(self.face_tops)],
            "non_thin_faces": [f"d{i}{s}" for i, s in self.non_thin_faces],
            "box_opposite_d2-_admissible": self.box_admissible,
            "box_refills_to_filler": self.refilled_box_matches,
            "shell_admissible": self.shell_admissible,
            "holds": self.holds,
        }


def counterexample():
    """(category, shell, filler, report)."""
    C = counterexample_category()
    shell = nv.NerveShell(C, 3, SHELL_IMAGES)
    values = tuple(nv.evaluate(shell, omega.d(2, s, omega.atom(chains.unit(3)))) for s in "-+")
    filler = nv.fill_shell(shell)
    faces = {(i, s): nv.face(filler, i, s) for i in (1, 2, 3) for s in "-+"}
    box = nv.box_of(filler, 2, "-")
    admissible = nv.box_admissible(box)
    report = CounterexampleReport(
        shell_values=values,
        filler_top=filler.top,
        filler_thin=nv.is_thin(filler),
        face_tops={k: f.top for k, f in faces.items()},
        thin_faces={k: nv.is_thin(f) for k, f in faces.items()},
        box_admissible=admissible,
        refilled_box_matches=admissible and nv.fill_box(box) == filler,
        shell_admissible=nv.shell_admissible(shell),
    )
    return C, shell, filler, report
