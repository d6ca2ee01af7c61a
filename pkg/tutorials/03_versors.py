"""Rigid transforms as versors: rotors, translators, motors, exp and log.

A versor V acts on any primitive x by the sandwich V x ~V. Because the
same formula covers points, lines, planes and spheres, there is exactly
one `apply` method. Run with:

    python3 tutorials/03_versors.py
"""

import numpy as np

from cgar import Dilator, Motor, Point, Rotor, Sphere, Translator


def main():
    # A rotor: 90 degrees about z. Applying it to a point on the x axis
    # lands on the y axis.
    rz = Rotor.from_axis_angle([0, 0, 1], np.pi / 2)
    p = Point(1.0, 0.0, 0.0)
    print("rotated point:", rz.apply(p).to_euclidean())

    # Rotors compose by multiplication and invert by reversion.
    rx = Rotor.from_axis_angle([1, 0, 0], np.pi / 2)
    combo = rx * rz
    print("combo type:", type(combo).__name__)
    back = (~combo).apply(combo.apply(p))
    print("there and back:", back.to_euclidean())
    print()

    # A translator is the exponential of an ideal bivector. No small-angle
    # trouble: translation is exact.
    t = Translator.from_translation([0.0, 0.0, 2.5])
    print("translated:", t.apply(p).to_euclidean())

    # Rotor * Translator gives a motor, the general rigid transform.
    m = t * rz
    print("motor applied:", m.apply(p).to_euclidean())
    print()

    # Motors have a logarithm: a screw generator (rotation axis plus
    # pitch). exp(log(m)) returns the same motor, so interpolation is
    # just scaling the generator.
    gen = m.log()
    again = Motor.exp(gen)
    print("log/exp roundtrip error:", np.abs((again - m).dense()).max())

    half = Motor.exp(gen * 0.5)
    print("halfway pose of the screw:", half.apply(p).to_euclidean())
    print()

    # Versors act on every primitive the same way. Move a sphere rigidly:
    # the center transforms, the radius is untouched.
    ball = Sphere([1.0, 1.0, 0.0], 0.75)
    center, radius = m.apply(ball).decode()
    print("moved sphere center", center, "radius", radius)
    print()

    # Long chains stay numerically unit. Multiply 100 random motors and
    # check m ~m = 1.
    rng = np.random.default_rng(7)
    chain = Motor.identity()
    for _ in range(100):
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        step = Translator.from_translation(
            rng.normal(size=3) * 0.1
        ) * Rotor.from_axis_angle(axis, rng.uniform(-1, 1))
        chain = chain * step
    print("unit error after 100 links:", chain.unit_error())

    # Dilators scale about the origin. Composing a dilator with a motor
    # gives a general conformal versor, though no longer a rigid one.
    d = Dilator.from_scale(2.0)
    print("dilated point:", d.apply(Point(1.0, 0.0, 0.0)).to_euclidean())


if __name__ == "__main__":
    main()
