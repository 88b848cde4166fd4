from pathlib import Path

OUT = Path(__file__).resolve().parent / "out"


def save(name: str, text: str) -> Path:
    OUT.mkdir(exist_ok=True)
    path = OUT / name
    path.write_text(text)
    return path
