"""Arbitrary-precision reference values pasted into the unit tests.

Run: python3 tools/reference_values.py
"""
import mpmath as mp

mp.mp.dps = 40


def show(name, value):
    value = mp.mpmathify(value)
    if isinstance(value, mp.mpc):
        print(f"{name}: {mp.nstr(value.real, 20)} {mp.nstr(value.imag, 20)}")
    else:
        print(f"{name}: {mp.nstr(value, 20)}")


show("lngamma(2.5+3i)", mp.loggamma(mp.mpc(2.5, 3)))
show("lngamma(-1.5+0.5i)", mp.loggamma(mp.mpc(-1.5, 0.5)))
show("poch(2+1.5i,5)", mp.rf(mp.mpc(2, 1.5), 5))
show("1F1(1;1.5;3.7)", mp.hyp1f1(1, 1.5, 3.7))
show("1F1(-3;2.5;1.2)", mp.hyp1f1(-3, 2.5, 1.2))
show("1F1(2;3.25;25)", mp.hyp1f1(2, 3.25, 25))
b = mp.mpc(2, mp.sqrt(3))
show("1F2(1;2+i√3,2-i√3;7.5)", mp.hyp1f2(1, b, mp.conj(b), 7.5))
show("1F2(3;3,1;2)", mp.hyp1f2(3, 3, 1, 2))
show("0F1(;1;4)", mp.hyp0f1(1, 4))
show("K_{2i}(0.1)", mp.besselk(2j, 0.1))
show("K_{1.4i}(2.5)", mp.besselk(1.4j, 2.5))
show("K_{3i}(1)", mp.besselk(3j, 1))
show("K_{0.5}(30)", mp.besselk(0.5, 30))
show("G2002(1.7|2,0)", mp.meijerg([[], []], [[2, 0], []], 1.7))
show("I_2(3)", mp.besseli(2, 3))
show("shifted layer N^2 at J=3 (q=1)", mp.nsum(lambda k: 3**k / (mp.rf(3, k) * mp.rf(1, k)), [0, mp.inf]))
