from xml.sax.saxutils import escape

from reportlab.lib import colors
from reportlab.lib.pagesizes import A4
from reportlab.lib.styles import getSampleStyleSheet
from reportlab.platypus import (
    Paragraph,
    Preformatted,
    SimpleDocTemplate,
    Spacer,
    Table,
    TableStyle,
)

# =====================================================
# CONFIG
# =====================================================
REPORT_FILE = "szabo_report.pdf"

TABLE_STYLE = TableStyle(
    [
        ("BACKGROUND", (0, 0), (-1, 0), colors.grey),
        ("TEXTCOLOR", (0, 0), (-1, 0), colors.whitesmoke),
        ("GRID", (0, 0), (-1, -1), 1, colors.black),
        ("ALIGN", (1, 1), (-1, -1), "CENTER"),
    ]
)


def _yes_no(value):
    if value is None:
        return "-"
    return "yes" if value else "no"


# =====================================================
# SECTIONS
# =====================================================
def _connection_section(report, styles):
    story = [Paragraph("<b>Connection</b>", styles["Heading2"])]
    story.append(Preformatted(report["input"], styles["Code"]))
    rows = [["check", "result"]]
    rows.append(["torsion-free", _yes_no(report.get("torsion_free"))])
    if "cyclic_parallel" in report:
        rows.append(["cyclic parallel Ricci", _yes_no(report["cyclic_parallel"]["verdict"])])
    if "szabo" in report:
        rows.append(["affine Szabo", _yes_no(report["szabo"]["is_szabo"])])
        rows.append(["trace identity", _yes_no(report["szabo"]["trace_identity_ok"])])
    if "extension" in report:
        extension = report["extension"]
        rows.append(["pseudo-Riemannian Szabo extension", _yes_no(extension["pseudo_szabo"]["is_szabo"])])
        for name, check in extension["checks"].items():
            rows.append([name.replace("_", " "), _yes_no(check["ok"])])
    table = Table(rows)
    table.setStyle(TABLE_STYLE)
    story.append(table)

    if "szabo" in report:
        story.append(Spacer(1, 12))
        story.append(Paragraph("<b>det(lam I - S(X))</b>", styles["Heading3"]))
        poly = "\n".join(f"lam^{d}: {c}" for d, c in enumerate(report["szabo"]["char_poly"]))
        story.append(Preformatted(poly, styles["Code"]))
    return story


def _verify_section(report, styles):
    section = report["verify_paper"]
    story = [Paragraph("<b>Reference run</b>", styles["Heading2"])]
    rows = [["check", "passed"]]
    rows.extend([name.replace("_", " "), _yes_no(ok)] for name, ok in section["summary"].items())
    table = Table(rows)
    table.setStyle(TABLE_STYLE)
    story.append(table)

    story.append(Spacer(1, 12))
    story.append(Paragraph("<b>Corpus</b>", styles["Heading3"]))
    corpus_rows = [["name", "cyclic", "Szabo", "ok"]]
    for row in section["corpus"]:
        corpus_rows.append([
            row["name"], _yes_no(row["cyclic_parallel"]), _yes_no(row["affine_szabo"]), _yes_no(row["ok"]),
        ])
    corpus_table = Table(corpus_rows)
    corpus_table.setStyle(TABLE_STYLE)
    story.append(corpus_table)

    family1 = section["family1_equivalence"]
    story.append(Spacer(1, 12))
    story.append(
        Paragraph(
            f"Family-1 sampling: {family1['agreements']}/{family1['samples']} agreements "
            f"(seed {family1['seed']}, degree &le; {family1['max_degree']}).",
            styles["BodyText"],
        )
    )
    return story


# =====================================================
# PDF WRITER
# =====================================================
def create_pdf(report, path=REPORT_FILE):
    styles = getSampleStyleSheet()
    doc = SimpleDocTemplate(path, pagesize=A4)
    story = [Paragraph(f"<b>szabo-lab: {report['command']}</b>", styles["Title"]), Spacer(1, 20)]

    if report.get("input"):
        story.extend(_connection_section(report, styles))
    if "verify_paper" in report:
        story.extend(_verify_section(report, styles))
    if report["error"]:
        story.append(Spacer(1, 12))
        story.append(Paragraph(f"<b>Error:</b> {escape(report['error'])}", styles["BodyText"]))

    story.append(Spacer(1, 20))
    story.append(Paragraph(f"<b>Result:</b> {'OK' if report['ok'] else 'FAILED'}", styles["BodyText"]))
    doc.build(story)
    return path
