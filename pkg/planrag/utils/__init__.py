"""Common util functions used by other packages in planrag.

Modules:
    command_line: Defines output util functions used by command line
        argument handlers.

    comparable_enum: Defines a comparable enum class.

    output: Defines util functions to output dot files and the plan
        artifacts printers run on.

    pipeline_config: The pipeline configuration and its YAML file.
"""
