"""Independent arithmetic for bz2: morphisms 1 and s multiply as Z/2."""


def mul(*xs: str) -> str:
    return "s" if sum(x == "s" for x in xs) % 2 else "1"
