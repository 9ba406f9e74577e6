#!/usr/bin/env python3
"""
Test script for the lab installation
Verifies that the numerical stack imports and the compiled kernels run,
without running the acceptance suite
"""

import sys


def test_imports():
    """Test that all stack packages can be imported"""
    import numpy
    print(f"✅ numpy version: {numpy.__version__}")

    import scipy
    print(f"✅ scipy version: {scipy.__version__}")

    import mpmath
    print(f"✅ mpmath version: {mpmath.__version__}")

    import numba
    print(f"✅ numba version: {numba.__version__}")

    import pandas
    print(f"✅ pandas version: {pandas.__version__}")

    import typer
    import tabulate
    print("✅ typer and tabulate import successful")

    try:
        import colorlog  # noqa: F401
        print("✅ colorlog available")
    except ImportError:
        print("ℹ️  colorlog missing, console logging stays plain")


def test_jacobi_kernel():
    """Test that the numba Jacobi kernel compiles and diagonalizes"""
    import numpy as np
    from numerics import SymMatrix, sym_eigen

    values, vectors = sym_eigen(SymMatrix(np.array([[2.0, 1.0], [1.0, 2.0]])))
    print(f"✅ Jacobi eigenvalues: {values.tolist()}")
    assert np.allclose(values, [1.0, 3.0])
    assert np.allclose(vectors.T @ vectors, np.eye(2))


def test_quadrature():
    """Test a small Gauss-Laguerre rule"""
    from numerics import gauss_laguerre

    rule = gauss_laguerre(0.0, 4)
    total = rule.integrate(lambda t: t ** 2)
    print(f"✅ Gauss-Laguerre integral of t^2 e^-t: {total:.12f}")
    assert abs(total - 2.0) < 1e-12


def main():
    print("=== Lab Installation Test ===\n")
    checks = [("Testing imports", test_imports),
              ("Testing Jacobi kernel", test_jacobi_kernel),
              ("Testing quadrature", test_quadrature)]
    results = []
    for i, (title, check) in enumerate(checks, start=1):
        print(f"{i}. {title}...")
        try:
            check()
            results.append(True)
        except (ImportError, AssertionError) as e:
            print(f"❌ {title} failed: {e}")
            results.append(False)
        print()

    print("=== Test Summary ===")
    if all(results):
        print("✅ All tests passed! The lab is ready to use.")
        print("\nNext steps:")
        print("- Run the unit tests: pytest")
        print("- Run the acceptance suite: python master_verifier.py verify")
        return 0
    print("❌ Some tests failed. Check installation.")
    return 1


if __name__ == "__main__":
    sys.exit(main())
