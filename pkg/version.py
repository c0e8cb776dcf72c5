versionString = "0.4.0"
distributionString = "OpenSource"
