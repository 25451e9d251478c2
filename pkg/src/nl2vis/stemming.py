"""Porter suffix-stripping stemmer.

Implements the algorithm as published (Porter, 1980) with the original
rule tables. The toolkit stems both query tokens and lexicon surfaces with
this same function, so matching only requires the two sides to agree, not
dictionary-perfect stems.
"""

from __future__ import annotations

_VOWELS = "aeiou"


class _Stemmer:
    """Stateful buffer for one stemming run (b = word, k = last index, j = offset)."""

    def __init__(self, word: str):
        self.b = word
        self.k = len(word) - 1
        self.j = 0

    # -- low-level predicates over the buffer --------------------------------

    def cons(self, i: int) -> bool:
        ch = self.b[i]
        if ch in _VOWELS:
            return False
        if ch == "y":
            return i == 0 or not self.cons(i - 1)
        return True

    def m(self) -> int:
        """Count of vowel-consonant sequences in b[0..j]."""
        n = 0
        i = 0
        while True:
            if i > self.j:
                return n
            if not self.cons(i):
                break
            i += 1
        i += 1
        while True:
            while True:
                if i > self.j:
                    return n
                if self.cons(i):
                    break
                i += 1
            i += 1
            n += 1
            while True:
                if i > self.j:
                    return n
                if not self.cons(i):
                    break
                i += 1
            i += 1

    def vowel_in_stem(self) -> bool:
        return any(not self.cons(i) for i in range(self.j + 1))

    def doublec(self, j: int) -> bool:
        return j >= 1 and self.b[j] == self.b[j - 1] and self.cons(j)

    def cvc(self, i: int) -> bool:
        # consonant-vowel-consonant ending at i, final consonant not w, x or y
        if i < 2 or not self.cons(i) or self.cons(i - 1) or not self.cons(i - 2):
            return False
        return self.b[i] not in "wxy"

    def ends(self, s: str) -> bool:
        if len(s) > self.k + 1 or not self.b.endswith(s):
            return False
        self.j = self.k - len(s)
        return True

    def setto(self, s: str) -> None:
        self.b = self.b[: self.j + 1] + s
        self.k = len(self.b) - 1

    def r(self, s: str) -> None:
        if self.m() > 0:
            self.setto(s)

    # -- algorithm steps ------------------------------------------------------

    def step1ab(self) -> None:
        if self.b.endswith("s"):
            if self.b.endswith("sses"):
                self.b = self.b[:-2]
            elif self.b.endswith("ies"):
                self.b = self.b[:-2]
            elif not self.b.endswith("ss"):
                self.b = self.b[:-1]
            self.k = len(self.b) - 1
        if self.ends("eed"):
            if self.m() > 0:
                self.b = self.b[:-1]
                self.k -= 1
        elif (self.ends("ed") or self.ends("ing")) and self.vowel_in_stem():
            self.b = self.b[: self.j + 1]
            self.k = self.j
            if self.ends("at"):
                self.setto("ate")
            elif self.ends("bl"):
                self.setto("ble")
            elif self.ends("iz"):
                self.setto("ize")
            elif self.doublec(self.k):
                if self.b[self.k] not in "lsz":
                    self.b = self.b[:-1]
                    self.k -= 1
            elif self.m() == 1 and self.cvc(self.k):
                self.setto("e")

    def step1c(self) -> None:
        if self.ends("y") and self.vowel_in_stem():
            self.b = self.b[: self.k] + "i"

    _STEP2 = (
        ("ational", "ate"), ("tional", "tion"), ("enci", "ence"), ("anci", "ance"),
        ("izer", "ize"), ("abli", "able"), ("alli", "al"), ("entli", "ent"),
        ("eli", "e"), ("ousli", "ous"), ("ization", "ize"), ("ation", "ate"),
        ("ator", "ate"), ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
        ("ousness", "ous"), ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
    )

    _STEP3 = (
        ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
        ("ical", "ic"), ("ful", ""), ("ness", ""),
    )

    # ordered longest-first so e.g. "ement" is tried before "ment"/"ent"
    _STEP4 = (
        "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ion",
        "ism", "ate", "iti", "ous", "ive", "ize", "al", "er", "ic", "ou",
    )

    def step2(self) -> None:
        for suffix, repl in self._STEP2:
            if self.ends(suffix):
                self.r(repl)
                return

    def step3(self) -> None:
        for suffix, repl in self._STEP3:
            if self.ends(suffix):
                self.r(repl)
                return

    def step4(self) -> None:
        for suffix in self._STEP4:
            if self.ends(suffix):
                if suffix == "ion" and not (self.j >= 0 and self.b[self.j] in "st"):
                    return
                if self.m() > 1:
                    self.b = self.b[: self.j + 1]
                    self.k = self.j
                return

    def step5(self) -> None:
        self.j = self.k
        if self.b.endswith("e"):
            a = self.m()
            if a > 1 or (a == 1 and not self.cvc(self.k - 1)):
                self.b = self.b[:-1]
                self.k -= 1
                self.j = self.k
        if self.b.endswith("ll") and self.m() > 1:
            self.b = self.b[:-1]
            self.k -= 1

    def run(self) -> str:
        if self.k <= 1:
            return self.b
        self.step1ab()
        self.step1c()
        self.step2()
        self.step3()
        self.step4()
        self.step5()
        return self.b


def porter_stem(token: str) -> str:
    """Stem a single lowercase token; non-alphabetic tokens pass through unchanged."""
    if not token.isalpha():
        return token
    return _Stemmer(token.lower()).run()
