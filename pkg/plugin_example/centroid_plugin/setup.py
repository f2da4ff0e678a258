from setuptools import setup, find_packages

setup(
    name="planrag-centroid-plugin",
    description="Nearest centroid node classifier for planrag",
    version="0.0",
    packages=find_packages(),
    python_requires=">=3.9",
    install_requires=["planrag", "numpy"],
    entry_points={
        "planrag.plugin": "planrag_centroid=planrag_centroid_plugin:make_plugin",
    },
)
