from .explorer import cli

cli()
