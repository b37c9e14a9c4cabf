from setuptools import setup, find_packages

setup(
	name="gf2_dense",
	version="0.1.0",
	packages=find_packages(exclude=["tests", "examples"]),
	package_data={"gf2_dense": ["data/*.txt"]},
	description="Dense linear algebra over GF(2): packed matrices, M4RM and Strassen products, PLU-style factorization",
	install_requires=["numpy", "pydantic>=2"],
	entry_points={"console_scripts": ["gf2-bench=gf2_dense.bench_cli:main"]},
)
