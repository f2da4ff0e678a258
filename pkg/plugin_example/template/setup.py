from setuptools import setup, find_packages

setup(
    name="planrag-plugin",
    description="plugin example for planrag",
    version="0.0",
    packages=find_packages(),
    python_requires=">=3.9",
    install_requires=["planrag"],
    entry_points={
        "planrag.plugin": "planrag_plugin=planrag_plugin:make_plugin",
    },
)
